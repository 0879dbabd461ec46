#pragma once

#include <span>
#include <vector>

namespace csfsim {

/// Ordered league schedule. Team references are team_ids.
struct Schedule {
    struct Game {
        int home;
        int away;
    };
    std::vector<Game> games;
};

/// Repeated circle-method round robin over the given team ids. Generates
/// games_per_team rounds (every team plays once per round), so each team
/// appears in exactly games_per_team games. Within each unordered pair,
/// home and away alternate across successive meetings; the first meeting's
/// orientation goes to whichever side has fewer home games so far, which
/// keeps every team's home count within floor(G/2) +/- 1.
/// Throws std::invalid_argument if the team count is odd or < 2, or
/// games_per_team < 1.
Schedule build_round_robin_schedule(std::span<const int> team_ids, int games_per_team);

/// Convenience overload over team ids 0..team_count-1.
Schedule build_round_robin_schedule(int team_count, int games_per_team);

/// Checks the schedule invariants against a team list: every listed team
/// plays exactly games_per_team games, total games = T*G/2, and each
/// team's home count is within floor(G/2) +/- 1.
/// Throws std::runtime_error naming the violated invariant.
void validate_schedule(const Schedule& schedule, std::span<const int> team_ids,
                       int games_per_team);

}  // namespace csfsim
