#include "csfsim/sim.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace csfsim {

namespace {

std::string canonical_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

}  // namespace

void LeagueConfig::validate() const {
    const auto t = teams.size();
    if (t < 2 || t % 2 != 0) {
        throw std::runtime_error("league config: team count must be even and >= 2, got " +
                                 std::to_string(t));
    }
    std::unordered_set<int> ids;
    for (const auto& team : teams) {
        if (!ids.insert(team.team_id).second) {
            throw std::runtime_error("league config: duplicate team_id " +
                                     std::to_string(team.team_id));
        }
        if (!(team.off_rpg > 0.0)) {
            throw std::runtime_error("league config: off_rpg must be > 0 for team " +
                                     std::to_string(team.team_id));
        }
        if (!(team.def_rpg > 0.0)) {
            throw std::runtime_error("league config: def_rpg must be > 0 for team " +
                                     std::to_string(team.team_id));
        }
    }
    if (games_per_team < 1) {
        throw std::runtime_error("league config: games_per_team must be >= 1");
    }
    if (!(league_mean_rpg > 0.0)) {
        throw std::runtime_error("league config: league_mean_rpg must be > 0");
    }
    if (!(dispersion > 0.0)) {
        throw std::runtime_error("league config: dispersion must be > 0");
    }
    if (!(extra_inning_mean_divisor > 0.0)) {
        throw std::runtime_error("league config: extra_inning_mean_divisor must be > 0");
    }
}

double expected_runs(double off_rpg, double def_rpg, double league_mean) {
    if (!(off_rpg > 0.0) || !(def_rpg > 0.0) || !(league_mean > 0.0)) {
        throw std::domain_error("expected_runs: all arguments must be > 0");
    }
    return off_rpg * def_rpg / league_mean;
}

GameResult simulate_game(const TeamParams& home, const TeamParams& away,
                         const LeagueConfig& cfg, Rng& stream) {
    const double mu_home = expected_runs(home.off_rpg, away.def_rpg, cfg.league_mean_rpg);
    const double mu_away = expected_runs(away.off_rpg, home.def_rpg, cfg.league_mean_rpg);

    int home_runs = sample_runs(mu_home, cfg.dispersion, stream);
    int away_runs = sample_runs(mu_away, cfg.dispersion, stream);

    const double inning_home = mu_home / cfg.extra_inning_mean_divisor;
    const double inning_away = mu_away / cfg.extra_inning_mean_divisor;
    int extra = 0;
    while (home_runs == away_runs) {
        if (++extra > 1000) {
            throw std::runtime_error("simulate_game: 1000 extra innings without a winner");
        }
        home_runs += stream.next_poisson(inning_home);
        away_runs += stream.next_poisson(inning_away);
    }
    return {home_runs, away_runs};
}

std::vector<TeamSeasonLine> simulate_season(const Schedule& schedule,
                                            const LeagueConfig& cfg, Rng& stream) {
    std::unordered_map<int, std::size_t> index;
    index.reserve(cfg.teams.size());
    for (std::size_t i = 0; i < cfg.teams.size(); ++i) {
        index[cfg.teams[i].team_id] = i;
    }

    std::vector<TeamSeasonLine> lines;
    lines.reserve(cfg.teams.size());
    for (const auto& team : cfg.teams) {
        lines.push_back({0, team.team_id, 0.0, 0.0, 0.0, 0.0});
    }

    for (const auto& g : schedule.games) {
        const auto hi = index.find(g.home);
        const auto ai = index.find(g.away);
        if (hi == index.end() || ai == index.end()) {
            throw std::runtime_error("simulate_season: schedule references team absent "
                                     "from the league config");
        }
        const GameResult result =
            simulate_game(cfg.teams[hi->second], cfg.teams[ai->second], cfg, stream);
        auto& h = lines[hi->second];
        auto& a = lines[ai->second];
        h.rs += result.home_runs;
        h.ra += result.away_runs;
        a.rs += result.away_runs;
        a.ra += result.home_runs;
        if (result.home_runs > result.away_runs) {
            h.wins += 1.0;
            a.losses += 1.0;
        } else {
            h.losses += 1.0;
            a.wins += 1.0;
        }
    }

    std::sort(lines.begin(), lines.end(),
              [](const TeamSeasonLine& x, const TeamSeasonLine& y) {
                  return x.team_id < y.team_id;
              });
    return lines;
}

SimDataset run_experiment(const LeagueConfig& cfg, const Schedule& schedule,
                          int iterations, std::uint64_t master_seed, int workers) {
    if (iterations < 1) {
        throw std::runtime_error("run_experiment: iterations must be >= 1");
    }
    cfg.validate();

    const std::size_t t = cfg.teams.size();
    SimDataset data;
    data.master_seed = master_seed;
    data.config_digest = config_digest(cfg, schedule);
    data.rows.resize(static_cast<std::size_t>(iterations) * t);

    if (workers <= 0) {
        workers = static_cast<int>(std::thread::hardware_concurrency());
        if (workers < 1) {
            workers = 1;
        }
    }
    workers = std::min(workers, iterations);

    std::atomic<int> next{0};
    std::mutex error_mutex;
    std::string first_error;

    auto worker = [&] {
        for (;;) {
            const int j = next.fetch_add(1);
            if (j >= iterations) {
                return;
            }
            try {
                Rng stream(derive_stream_seed(master_seed, static_cast<std::uint64_t>(j)));
                auto lines = simulate_season(schedule, cfg, stream);
                for (std::size_t i = 0; i < t; ++i) {
                    lines[i].iteration = j;
                    data.rows[static_cast<std::size_t>(j) * t + i] = lines[i];
                }
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (first_error.empty()) {
                    first_error = "iteration " + std::to_string(j) + ": " + e.what();
                }
                next.store(iterations);
                return;
            }
        }
    };

    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back(worker);
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    if (!first_error.empty()) {
        throw std::runtime_error("run_experiment: " + first_error);
    }
    return data;
}

std::vector<TeamParams> synthetic_league(int team_count, double league_mean) {
    if (team_count < 2 || team_count % 2 != 0) {
        throw std::runtime_error("synthetic_league: team count must be even and >= 2");
    }
    const int t = team_count;
    // Smallest multiplier >= 7 coprime with t, so def ranks are decorrelated
    // from off ranks without collapsing every team to equal quality.
    int mult = 7;
    while (std::gcd(mult, t) != 1) {
        ++mult;
    }

    std::vector<double> off(static_cast<std::size_t>(t));
    std::vector<double> def(static_cast<std::size_t>(t));
    for (int i = 0; i < t; ++i) {
        off[static_cast<std::size_t>(i)] =
            3.3 + 1.7 * static_cast<double>(i) / static_cast<double>(t - 1);
        const int p = (mult * i) % t;
        def[static_cast<std::size_t>(i)] =
            3.3 + 1.7 * static_cast<double>(p) / static_cast<double>(t - 1);
    }
    const double off_mean = std::accumulate(off.begin(), off.end(), 0.0) / t;
    const double def_mean = std::accumulate(def.begin(), def.end(), 0.0) / t;

    std::vector<TeamParams> teams;
    teams.reserve(static_cast<std::size_t>(t));
    for (int i = 0; i < t; ++i) {
        char name[16];
        std::snprintf(name, sizeof(name), "Team%02d", i + 1);
        teams.push_back({i + 1, name,
                         off[static_cast<std::size_t>(i)] * league_mean / off_mean,
                         def[static_cast<std::size_t>(i)] * league_mean / def_mean});
    }
    return teams;
}

std::string config_digest(const LeagueConfig& cfg, const Schedule& schedule) {
    std::string canon;
    canon.reserve(64 * cfg.teams.size() + 16 * schedule.games.size());
    for (const auto& team : cfg.teams) {
        canon += std::to_string(team.team_id);
        canon += ',';
        canon += team.name;
        canon += ',';
        canon += canonical_double(team.off_rpg);
        canon += ',';
        canon += canonical_double(team.def_rpg);
        canon += '\n';
    }
    canon += std::to_string(cfg.games_per_team);
    canon += ',';
    canon += canonical_double(cfg.league_mean_rpg);
    canon += ',';
    canon += canonical_double(cfg.dispersion);
    canon += ',';
    canon += canonical_double(cfg.extra_inning_mean_divisor);
    canon += '\n';
    for (const auto& g : schedule.games) {
        canon += std::to_string(g.home);
        canon += '-';
        canon += std::to_string(g.away);
        canon += ';';
    }

    std::uint64_t hash = 0xCBF29CE484222325ull;
    for (const unsigned char c : canon) {
        hash ^= c;
        hash *= 0x100000001B3ull;
    }
    char hex[17];
    std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(hash));
    return hex;
}

}  // namespace csfsim
