#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "csfsim/rng.hpp"
#include "csfsim/schedule.hpp"

namespace csfsim {

/// Team-level run-rate calibration: mean runs scored and allowed per game
/// against a league-average opponent.
struct TeamParams {
    int team_id;
    std::string name;
    double off_rpg;
    double def_rpg;
};

struct LeagueConfig {
    std::vector<TeamParams> teams;
    int games_per_team = 162;
    double league_mean_rpg = 4.07;
    double dispersion = 4.0;
    double extra_inning_mean_divisor = 9.0;

    /// Throws std::runtime_error on the first violated invariant
    /// (odd team count, duplicate team_id, non-positive rates, ...).
    void validate() const;
};

struct GameResult {
    int home_runs;
    int away_runs;
};

/// One team-season observation: the regression row.
/// wins/losses/rs/ra are stored as doubles so synthetic datasets with exact
/// fractional win percentages can flow through the estimators; simulated
/// seasons always hold whole numbers.
struct TeamSeasonLine {
    int iteration;
    int team_id;
    double wins;
    double losses;
    double rs;
    double ra;

    double win_pct() const { return wins / (wins + losses); }
};

struct SimDataset {
    std::vector<TeamSeasonLine> rows;
    std::uint64_t master_seed = 0;
    std::string config_digest;
};

/// Mean runs per game for an offense off_i facing a defense def_j:
/// off_i * def_j / league_mean. Throws std::domain_error on non-positive input.
double expected_runs(double off_rpg, double def_rpg, double league_mean);

/// One game. Regulation totals are negative-binomial draws; a tie is broken
/// by appending one extra inning per side (Poisson with mean mu/divisor)
/// until a completed inning separates the teams. No home advantage.
GameResult simulate_game(const TeamParams& home, const TeamParams& away,
                         const LeagueConfig& cfg, Rng& stream);

/// One full season over the schedule. Returns one line per team, ordered by
/// team_id, with the iteration field set to 0 (run_experiment overwrites it).
std::vector<TeamSeasonLine> simulate_season(const Schedule& schedule,
                                            const LeagueConfig& cfg, Rng& stream);

/// N independent seasons. Iteration j draws from a private stream seeded by
/// derive_stream_seed(master_seed, j), so the dataset is identical no matter
/// how many workers run (workers <= 0 picks the hardware count).
SimDataset run_experiment(const LeagueConfig& cfg, const Schedule& schedule,
                          int iterations, std::uint64_t master_seed, int workers = 1);

/// Deterministic 30-team synthetic fixture: off_rpg spread evenly over
/// [3.3, 5.0], def_rpg the same values under a fixed decorrelating
/// permutation, both columns rescaled so their mean equals league_mean.
std::vector<TeamParams> synthetic_league(int team_count = 30, double league_mean = 4.07);

/// FNV-1a-64 digest (hex) of the canonical serialization of config + schedule.
std::string config_digest(const LeagueConfig& cfg, const Schedule& schedule);

}  // namespace csfsim
