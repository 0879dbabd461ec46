#include <benchmark/benchmark.h>

#include "csfsim/estimate.hpp"
#include "csfsim/rng.hpp"
#include "csfsim/schedule.hpp"
#include "csfsim/sim.hpp"

namespace {

using namespace csfsim;

LeagueConfig default_config() {
    LeagueConfig cfg;
    cfg.teams = synthetic_league();
    return cfg;
}

void BM_SampleRuns(benchmark::State& state) {
    Rng rng(42);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_runs(4.07, 4.0, rng));
    }
}
BENCHMARK(BM_SampleRuns);

void BM_SimulateGame(benchmark::State& state) {
    const LeagueConfig cfg = default_config();
    Rng rng(42);
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_game(cfg.teams[0], cfg.teams[15], cfg, rng));
    }
}
BENCHMARK(BM_SimulateGame);

void BM_SimulateSeason(benchmark::State& state) {
    const LeagueConfig cfg = default_config();
    const Schedule schedule = [&] {
        std::vector<int> ids;
        for (const auto& t : cfg.teams) ids.push_back(t.team_id);
        return build_round_robin_schedule(ids, cfg.games_per_team);
    }();
    Rng rng(42);
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_season(schedule, cfg, rng));
    }
}
BENCHMARK(BM_SimulateSeason);

void BM_FitModel(benchmark::State& state) {
    const LeagueConfig cfg = default_config();
    std::vector<int> ids;
    for (const auto& t : cfg.teams) ids.push_back(t.team_id);
    const Schedule schedule = build_round_robin_schedule(ids, cfg.games_per_team);
    const SimDataset data = run_experiment(cfg, schedule, 100, 42, 0);
    FitOptions opts;
    opts.form = state.range(0) == 0 ? ModelForm::tullock : ModelForm::difference;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_model(data, opts));
    }
}
BENCHMARK(BM_FitModel)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();
