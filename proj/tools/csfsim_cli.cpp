#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "csfsim/csf.hpp"
#include "csfsim/estimate.hpp"
#include "csfsim/io.hpp"
#include "csfsim/schedule.hpp"
#include "csfsim/sim.hpp"
#include "csfsim/svg.hpp"
#include "csfsim/version.hpp"

namespace {

using namespace csfsim;

struct SimulateArgs {
    std::string teams_path;
    int iterations = 1000;
    std::uint64_t seed = 0;
    std::string out_path;
    std::string schedule_path;
    double dispersion = 4.0;
    double league_mean = 4.07;
    int games = 162;
    double extra_inning_divisor = 9.0;
    int workers = 1;
};

int run_simulate(const SimulateArgs& args) {
    LeagueConfig cfg;
    cfg.teams = load_team_params(args.teams_path);
    cfg.games_per_team = args.games;
    cfg.league_mean_rpg = args.league_mean;
    cfg.dispersion = args.dispersion;
    cfg.extra_inning_mean_divisor = args.extra_inning_divisor;
    cfg.validate();

    std::vector<int> ids;
    ids.reserve(cfg.teams.size());
    for (const auto& team : cfg.teams) {
        ids.push_back(team.team_id);
    }

    Schedule schedule;
    if (args.schedule_path.empty()) {
        schedule = build_round_robin_schedule(ids, cfg.games_per_team);
    } else {
        schedule = load_schedule(args.schedule_path);
    }
    validate_schedule(schedule, ids, cfg.games_per_team);

    const SimDataset data =
        run_experiment(cfg, schedule, args.iterations, args.seed, args.workers);

    ExperimentManifest manifest;
    manifest.master_seed = args.seed;
    manifest.iterations = args.iterations;
    manifest.games_per_team = cfg.games_per_team;
    manifest.league_mean_rpg = cfg.league_mean_rpg;
    manifest.dispersion = cfg.dispersion;
    manifest.extra_inning_mean_divisor = cfg.extra_inning_mean_divisor;
    manifest.schedule_source = args.schedule_path.empty() ? "builtin" : args.schedule_path;
    manifest.tool_version = kVersion;
    manifest.config_digest = data.config_digest;

    write_dataset(args.out_path, data, manifest);
    std::cout << "wrote " << data.rows.size() << " rows to " << args.out_path << "\n";
    return 0;
}

FitOptions make_options(const std::string& model, bool fixed_effects, bool intercept) {
    FitOptions opts;
    opts.form = model_form_from_string(model);
    opts.fixed_effects = fixed_effects;
    opts.intercept = intercept;
    return opts;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo season simulator and win-percentage model comparison"};
    app.require_subcommand(1);
    app.set_version_flag("--version", csfsim::kVersion);

    SimulateArgs sim_args;
    auto* simulate = app.add_subcommand("simulate", "Simulate N seasons to a dataset CSV");
    simulate->add_option("--teams", sim_args.teams_path, "teams CSV")->required();
    simulate->add_option("--iterations", sim_args.iterations, "season count")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--seed", sim_args.seed, "master seed");
    simulate->add_option("--out", sim_args.out_path, "output dataset CSV")->required();
    simulate->add_option("--schedule", sim_args.schedule_path, "matchup CSV (optional)");
    simulate->add_option("--dispersion", sim_args.dispersion, "negative-binomial dispersion");
    simulate->add_option("--league-mean", sim_args.league_mean, "league mean runs/game");
    simulate->add_option("--games", sim_args.games, "games per team");
    simulate->add_option("--extra-inning-divisor", sim_args.extra_inning_divisor,
                         "extra-inning mean divisor");
    simulate->add_option("--workers", sim_args.workers,
                         "worker threads (0 = hardware count)");

    std::string fit_data;
    std::string fit_model_name = "tullock";
    std::string fit_out;
    bool fit_fe = false;
    bool fit_intercept = false;
    auto* fit = app.add_subcommand("fit", "Fit one model form to a dataset");
    fit->add_option("--data", fit_data, "dataset CSV")->required();
    fit->add_option("--model", fit_model_name, "tullock|difference")->required();
    fit->add_flag("--fixed-effects", fit_fe, "add team fixed effects");
    fit->add_flag("--intercept", fit_intercept, "add an intercept");
    fit->add_option("--out", fit_out, "output report JSON")->required();

    std::string cmp_data;
    std::string cmp_format = "text";
    std::string cmp_plot;
    bool cmp_fe = false;
    bool cmp_intercept = false;
    auto* compare = app.add_subcommand("compare", "Fit and compare both model forms");
    compare->add_option("--data", cmp_data, "dataset CSV")->required();
    compare->add_option("--format", cmp_format, "text|json|csv");
    compare->add_option("--plot", cmp_plot, "write scatter SVG for the preferred fit");
    compare->add_flag("--fixed-effects", cmp_fe, "add team fixed effects");
    compare->add_flag("--intercept", cmp_intercept, "add an intercept");

    std::string pred_model;
    double pred_param = 0.0;
    double pred_rs = 0.0;
    double pred_ra = 0.0;
    auto* predict = app.add_subcommand("predict", "Evaluate one model at given run totals");
    predict->add_option("--model", pred_model, "tullock|difference")->required();
    predict->add_option("--param", pred_param, "model parameter (alpha or beta)")->required();
    predict->add_option("--rs", pred_rs, "runs scored")->required();
    predict->add_option("--ra", pred_ra, "runs allowed")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (simulate->parsed()) {
            return run_simulate(sim_args);
        }
        if (fit->parsed()) {
            const SimDataset data = read_dataset(fit_data);
            const FitReport report =
                fit_model(data, make_options(fit_model_name, fit_fe, fit_intercept));
            std::ofstream out(fit_out, std::ios::binary);
            if (!out) {
                throw std::runtime_error(fit_out + ": cannot open for writing");
            }
            out << render_fit_json(report);
            std::cout << "wrote " << fit_out << "\n";
            return 0;
        }
        if (compare->parsed()) {
            const SimDataset data = read_dataset(cmp_data);
            const ComparisonReport report =
                compare_models(data, make_options("tullock", cmp_fe, cmp_intercept));
            std::cout << render_comparison(report, report_format_from_string(cmp_format));
            if (!cmp_plot.empty()) {
                const FitReport& preferred = report.preferred == ModelForm::tullock
                                                 ? report.tullock
                                                 : report.difference;
                render_scatter_svg(data, preferred, cmp_plot);
            }
            return 0;
        }
        if (predict->parsed()) {
            const RunTotals rt{pred_rs, pred_ra};
            const double w = model_form_from_string(pred_model) == ModelForm::tullock
                                 ? tullock_win_pct(rt, TullockParams{pred_param})
                                 : difference_win_pct(rt, DifferenceParams{pred_param});
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.6f", w);
            std::cout << buf << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
