#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "csfsim/rng.hpp"
#include "csfsim/schedule.hpp"
#include "csfsim/sim.hpp"

using namespace csfsim;

namespace {

LeagueConfig fixture_config() {
    LeagueConfig cfg;
    cfg.teams = synthetic_league();
    return cfg;
}

LeagueConfig identical_teams_config(int t = 30) {
    LeagueConfig cfg;
    for (int i = 0; i < t; ++i) {
        cfg.teams.push_back({i + 1, "Team" + std::to_string(i + 1), 4.07, 4.07});
    }
    return cfg;
}

Schedule schedule_for(const LeagueConfig& cfg) {
    std::vector<int> ids;
    for (const auto& team : cfg.teams) ids.push_back(team.team_id);
    return build_round_robin_schedule(ids, cfg.games_per_team);
}

}  // namespace

TEST_CASE("expected_runs is the attack-defense product over the league mean") {
    CHECK(expected_runs(4.0, 4.0, 4.0) == doctest::Approx(4.0));
    CHECK(expected_runs(5.0, 4.0, 4.0) == doctest::Approx(5.0));
    CHECK(expected_runs(4.5, 3.6, 4.0) == doctest::Approx(4.05));
    CHECK_THROWS(expected_runs(0.0, 4.0, 4.0));
    CHECK_THROWS(expected_runs(4.0, 4.0, -1.0));
}

TEST_CASE("the synthetic fixture preserves the league mean") {
    const auto teams = synthetic_league();
    CHECK(teams.size() == 30);
    double off = 0.0;
    double def = 0.0;
    for (const auto& t : teams) {
        off += t.off_rpg;
        def += t.def_rpg;
        CHECK(t.off_rpg > 0.0);
        CHECK(t.def_rpg > 0.0);
    }
    CHECK(off / 30.0 == doctest::Approx(4.07).epsilon(1e-12));
    CHECK(def / 30.0 == doctest::Approx(4.07).epsilon(1e-12));
}

TEST_CASE("simulate_game is deterministic and never ties") {
    const LeagueConfig cfg = fixture_config();
    Rng a(555);
    Rng b(555);
    for (int i = 0; i < 500; ++i) {
        const GameResult ra = simulate_game(cfg.teams[0], cfg.teams[20], cfg, a);
        const GameResult rb = simulate_game(cfg.teams[0], cfg.teams[20], cfg, b);
        CHECK(ra.home_runs == rb.home_runs);
        CHECK(ra.away_runs == rb.away_runs);
        CHECK(ra.home_runs != ra.away_runs);
    }
}

TEST_CASE("no home advantage: identical teams split games evenly") {
    const LeagueConfig cfg = identical_teams_config(2);
    Rng rng(20240817);
    int home_wins = 0;
    const int n = 100'000;
    for (int i = 0; i < n; ++i) {
        const GameResult g = simulate_game(cfg.teams[0], cfg.teams[1], cfg, rng);
        if (g.home_runs > g.away_runs) {
            ++home_wins;
        }
    }
    const double frac = static_cast<double>(home_wins) / n;
    CHECK(frac == doctest::Approx(0.5).epsilon(0.01));
    CHECK(std::abs(frac - 0.5) < 0.005);
}

TEST_CASE("a stronger offense wins more than half its games") {
    LeagueConfig cfg;
    cfg.teams.push_back({1, "Strong", 5.0, 4.0});
    cfg.teams.push_back({2, "Weak", 3.5, 4.0});
    Rng rng(99);
    int strong_wins = 0;
    const int n = 100'000;
    for (int i = 0; i < n; ++i) {
        const GameResult g = simulate_game(cfg.teams[0], cfg.teams[1], cfg, rng);
        if (g.home_runs > g.away_runs) {
            ++strong_wins;
        }
    }
    CHECK(strong_wins > n / 2);
}

TEST_CASE("season totals are conserved") {
    const LeagueConfig cfg = fixture_config();
    const Schedule schedule = schedule_for(cfg);
    Rng rng(31337);
    const auto lines = simulate_season(schedule, cfg, rng);
    CHECK(lines.size() == 30);

    double wins = 0.0;
    double rs = 0.0;
    double ra = 0.0;
    for (const auto& line : lines) {
        CHECK(line.wins + line.losses == doctest::Approx(162.0));
        CHECK(line.wins >= 0.0);
        CHECK(line.wins <= 162.0);
        wins += line.wins;
        rs += line.rs;
        ra += line.ra;
    }
    CHECK(wins == doctest::Approx(2430.0));
    CHECK(rs == doctest::Approx(ra));
}

TEST_CASE("identical stream state reproduces the season") {
    const LeagueConfig cfg = fixture_config();
    const Schedule schedule = schedule_for(cfg);
    Rng a(777);
    Rng b(777);
    const auto la = simulate_season(schedule, cfg, a);
    const auto lb = simulate_season(schedule, cfg, b);
    REQUIRE(la.size() == lb.size());
    for (std::size_t i = 0; i < la.size(); ++i) {
        CHECK(la[i].team_id == lb[i].team_id);
        CHECK(la[i].wins == lb[i].wins);
        CHECK(la[i].rs == lb[i].rs);
        CHECK(la[i].ra == lb[i].ra);
    }
}

TEST_CASE("run_experiment row count, ordering, and determinism") {
    const LeagueConfig cfg = fixture_config();
    const Schedule schedule = schedule_for(cfg);
    const SimDataset a = run_experiment(cfg, schedule, 20, 42, 1);
    CHECK(a.rows.size() == 20u * 30u);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].iteration == static_cast<int>(i / 30));
        CHECK(a.rows[i].team_id == static_cast<int>(i % 30) + 1);
    }
    const SimDataset b = run_experiment(cfg, schedule, 20, 42, 1);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].wins == b.rows[i].wins);
        CHECK(a.rows[i].rs == b.rows[i].rs);
    }
    CHECK(a.config_digest == b.config_digest);
}

TEST_CASE("worker count does not change the dataset") {
    const LeagueConfig cfg = fixture_config();
    const Schedule schedule = schedule_for(cfg);
    const SimDataset serial = run_experiment(cfg, schedule, 32, 4242, 1);
    const SimDataset parallel = run_experiment(cfg, schedule, 32, 4242, 8);
    REQUIRE(serial.rows.size() == parallel.rows.size());
    for (std::size_t i = 0; i < serial.rows.size(); ++i) {
        CHECK(serial.rows[i].iteration == parallel.rows[i].iteration);
        CHECK(serial.rows[i].team_id == parallel.rows[i].team_id);
        CHECK(serial.rows[i].wins == parallel.rows[i].wins);
        CHECK(serial.rows[i].losses == parallel.rows[i].losses);
        CHECK(serial.rows[i].rs == parallel.rows[i].rs);
        CHECK(serial.rows[i].ra == parallel.rows[i].ra);
    }
}

TEST_CASE("calibration sanity: identical teams distribute wins around 81") {
    const LeagueConfig cfg = identical_teams_config();
    const Schedule schedule = schedule_for(cfg);
    const SimDataset data = run_experiment(cfg, schedule, 1000, 2014, 0);
    double sum = 0.0;
    double lo = 162.0;
    double hi = 0.0;
    for (const auto& row : data.rows) {
        sum += row.wins;
        lo = std::min(lo, row.wins);
        hi = std::max(hi, row.wins);
    }
    CHECK(sum / static_cast<double>(data.rows.size()) == doctest::Approx(81.0).epsilon(1e-9));
    CHECK(lo >= 40.0);
    CHECK(hi <= 122.0);
}

TEST_CASE("raising a team's offense does not lower its mean wins") {
    LeagueConfig base = identical_teams_config(10);
    base.games_per_team = 162;
    const Schedule schedule = schedule_for(base);

    auto mean_wins_team1 = [&](double off) {
        LeagueConfig cfg = base;
        cfg.teams[0].off_rpg = off;
        const SimDataset data = run_experiment(cfg, schedule, 1000, 5150, 0);
        double sum = 0.0;
        int count = 0;
        for (const auto& row : data.rows) {
            if (row.team_id == 1) {
                sum += row.wins;
                ++count;
            }
        }
        return sum / count;
    };

    const double base_mean = mean_wins_team1(4.07);
    const double boosted_mean = mean_wins_team1(4.8);
    CHECK(boosted_mean >= base_mean);
}

TEST_CASE("league config validation catches bad parameters") {
    LeagueConfig cfg = fixture_config();
    CHECK_NOTHROW(cfg.validate());
    cfg.teams[3].team_id = cfg.teams[4].team_id;
    CHECK_THROWS(cfg.validate());

    LeagueConfig odd = fixture_config();
    odd.teams.pop_back();
    CHECK_THROWS(odd.validate());

    LeagueConfig bad_rate = fixture_config();
    bad_rate.teams[0].off_rpg = -1.0;
    CHECK_THROWS(bad_rate.validate());

    LeagueConfig bad_disp = fixture_config();
    bad_disp.dispersion = 0.0;
    CHECK_THROWS(bad_disp.validate());
}
