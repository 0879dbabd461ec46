#include "csfsim/schedule.hpp"

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace csfsim {

namespace {

// Balanced orientation of a multigraph: every vertex ends with out-degree
// within +/- 1 of half its degree (exactly half when the degree is even).
// Odd-degree vertices are tied off through a dummy vertex so every component
// has an Eulerian circuit; orienting real edges along the circuits balances
// in- and out-degree.
std::vector<bool> balanced_orientation(int vertex_count,
                                       const std::vector<std::pair<int, int>>& edges) {
    const int dummy = vertex_count;
    struct HalfEdge {
        int to;
        int edge_id;  // -1 for dummy edges
        bool forward;
    };
    std::vector<std::vector<HalfEdge>> adj(static_cast<std::size_t>(vertex_count) + 1);
    std::vector<int> degree(static_cast<std::size_t>(vertex_count), 0);

    for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto [a, b] = edges[e];
        adj[a].push_back({b, static_cast<int>(e), true});
        adj[b].push_back({a, static_cast<int>(e), false});
        ++degree[a];
        ++degree[b];
    }
    for (int v = 0; v < vertex_count; ++v) {
        if (degree[v] % 2 != 0) {
            adj[v].push_back({dummy, -1, true});
            adj[dummy].push_back({v, -1, false});
        }
    }

    std::vector<bool> first_is_tail(edges.size(), true);
    std::vector<std::size_t> next(adj.size(), 0);
    std::vector<bool> edge_used(edges.size(), false);
    std::vector<bool> dummy_used(adj[dummy].size(), false);

    // Hierholzer over every component; the walk direction orients each edge.
    for (int start = 0; start <= vertex_count; ++start) {
        std::vector<int> stack{start};
        while (!stack.empty()) {
            const int v = stack.back();
            bool advanced = false;
            while (next[v] < adj[v].size()) {
                const HalfEdge& h = adj[v][next[v]++];
                if (h.edge_id >= 0) {
                    if (edge_used[static_cast<std::size_t>(h.edge_id)]) {
                        continue;
                    }
                    edge_used[static_cast<std::size_t>(h.edge_id)] = true;
                    first_is_tail[static_cast<std::size_t>(h.edge_id)] = h.forward;
                } else {
                    // dummy edges are matched by position within the incident lists
                    bool taken = false;
                    for (std::size_t d = 0; d < adj[dummy].size(); ++d) {
                        const int other = (v == dummy) ? h.to : v;
                        if (!dummy_used[d] && adj[dummy][d].to == other) {
                            dummy_used[d] = true;
                            taken = true;
                            break;
                        }
                    }
                    if (!taken) {
                        continue;
                    }
                }
                stack.push_back(h.to);
                advanced = true;
                break;
            }
            if (!advanced) {
                stack.pop_back();
            }
        }
    }
    return first_is_tail;
}

}  // namespace

Schedule build_round_robin_schedule(std::span<const int> team_ids, int games_per_team) {
    const int t = static_cast<int>(team_ids.size());
    if (t < 2 || t % 2 != 0) {
        throw std::invalid_argument("schedule: team count must be even and >= 2, got " +
                                    std::to_string(t));
    }
    if (games_per_team < 1) {
        throw std::invalid_argument("schedule: games_per_team must be >= 1");
    }

    const int rounds_per_pass = t - 1;
    const int full_passes = games_per_team / rounds_per_pass;
    const int remainder = games_per_team % rounds_per_pass;

    // Circle-method pairings per circle round, in team positions.
    std::vector<std::vector<std::pair<int, int>>> round_pairs(
        static_cast<std::size_t>(rounds_per_pass));
    for (int r = 0; r < rounds_per_pass; ++r) {
        auto& pairs = round_pairs[static_cast<std::size_t>(r)];
        pairs.emplace_back(t - 1, r);
        for (int k = 1; k < t / 2; ++k) {
            pairs.emplace_back((r + k) % rounds_per_pass,
                               (r - k + rounds_per_pass) % rounds_per_pass);
        }
    }

    // A pair seated at circle round r meets (full_passes + 1) times when
    // r < remainder, else full_passes times. Meetings alternate home/away, so
    // even meeting counts split evenly no matter who opens; pairs with an odd
    // count give their opener one extra home game. Balancing those openers is
    // an orientation problem: give each such pair one directed edge and make
    // every team's out-degree as close to half its degree as possible.
    std::vector<std::pair<int, int>> odd_edges;
    std::vector<std::size_t> odd_edge_index(
        static_cast<std::size_t>(rounds_per_pass) * static_cast<std::size_t>(t / 2),
        SIZE_MAX);
    for (int r = 0; r < rounds_per_pass; ++r) {
        const int meetings = full_passes + (r < remainder ? 1 : 0);
        if (meetings % 2 == 0 || meetings == 0) {
            continue;
        }
        const auto& pairs = round_pairs[static_cast<std::size_t>(r)];
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            odd_edge_index[static_cast<std::size_t>(r) * (t / 2) + k] = odd_edges.size();
            odd_edges.push_back(pairs[k]);
        }
    }
    const std::vector<bool> opener_is_first = balanced_orientation(t, odd_edges);

    Schedule out;
    out.games.reserve(static_cast<std::size_t>(t) * games_per_team / 2);
    for (int round = 0; round < games_per_team; ++round) {
        const int r = round % rounds_per_pass;
        const int meeting = round / rounds_per_pass;
        const auto& pairs = round_pairs[static_cast<std::size_t>(r)];
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            const auto [a, b] = pairs[k];
            const std::size_t e = odd_edge_index[static_cast<std::size_t>(r) * (t / 2) + k];
            // opener hosts meetings 0, 2, 4, ...
            bool a_opens = (e == SIZE_MAX) ? (a < b) : opener_is_first[e];
            const bool a_hosts = a_opens == (meeting % 2 == 0);
            const int home = team_ids[static_cast<std::size_t>(a_hosts ? a : b)];
            const int away = team_ids[static_cast<std::size_t>(a_hosts ? b : a)];
            out.games.push_back({home, away});
        }
    }
    return out;
}

Schedule build_round_robin_schedule(int team_count, int games_per_team) {
    std::vector<int> ids(static_cast<std::size_t>(std::max(team_count, 0)));
    std::iota(ids.begin(), ids.end(), 0);
    return build_round_robin_schedule(ids, games_per_team);
}

void validate_schedule(const Schedule& schedule, std::span<const int> team_ids,
                       int games_per_team) {
    std::unordered_map<int, int> played;
    std::unordered_map<int, int> home;
    for (const int id : team_ids) {
        played[id] = 0;
        home[id] = 0;
    }
    std::size_t idx = 0;
    for (const auto& g : schedule.games) {
        ++idx;
        if (g.home == g.away) {
            throw std::runtime_error("schedule: game " + std::to_string(idx) +
                                     " pairs team " + std::to_string(g.home) + " with itself");
        }
        for (const int id : {g.home, g.away}) {
            auto it = played.find(id);
            if (it == played.end()) {
                throw std::runtime_error("schedule: game " + std::to_string(idx) +
                                         " references unknown team " + std::to_string(id));
            }
            ++it->second;
        }
        ++home[g.home];
    }
    const std::size_t expected_total =
        team_ids.size() * static_cast<std::size_t>(games_per_team) / 2;
    if (schedule.games.size() != expected_total) {
        throw std::runtime_error("schedule: expected " + std::to_string(expected_total) +
                                 " games, got " + std::to_string(schedule.games.size()));
    }
    for (const int id : team_ids) {
        if (played[id] != games_per_team) {
            throw std::runtime_error("schedule: team " + std::to_string(id) + " plays " +
                                     std::to_string(played[id]) + " games, expected " +
                                     std::to_string(games_per_team));
        }
        const int half = games_per_team / 2;
        if (home[id] < half - 1 || home[id] > half + 1) {
            throw std::runtime_error("schedule: team " + std::to_string(id) + " hosts " +
                                     std::to_string(home[id]) +
                                     " games, outside floor(G/2) +/- 1");
        }
    }
}

}  // namespace csfsim
