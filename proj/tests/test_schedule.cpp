#include <doctest.h>

#include <map>
#include <set>
#include <stdexcept>

#include "csfsim/schedule.hpp"

using namespace csfsim;

TEST_CASE("four teams, three rounds is one full round robin") {
    const Schedule s = build_round_robin_schedule(4, 3);
    CHECK(s.games.size() == 6);
    std::map<int, int> played;
    std::set<std::pair<int, int>> pairs;
    for (const auto& g : s.games) {
        ++played[g.home];
        ++played[g.away];
        pairs.insert({std::min(g.home, g.away), std::max(g.home, g.away)});
    }
    for (int id = 0; id < 4; ++id) {
        CHECK(played[id] == 3);
    }
    CHECK(pairs.size() == 6);  // every pair meets exactly once
}

TEST_CASE("mlb-size schedule satisfies every invariant") {
    const Schedule s = build_round_robin_schedule(30, 162);
    CHECK(s.games.size() == 2430);

    std::map<int, int> played;
    std::map<int, int> home;
    for (const auto& g : s.games) {
        ++played[g.home];
        ++played[g.away];
        ++home[g.home];
        CHECK(g.home != g.away);
    }
    for (int id = 0; id < 30; ++id) {
        CHECK(played[id] == 162);
        CHECK(home[id] >= 80);
        CHECK(home[id] <= 82);
    }

    std::vector<int> ids(30);
    for (int i = 0; i < 30; ++i) ids[i] = i;
    CHECK_NOTHROW(validate_schedule(s, ids, 162));
}

TEST_CASE("home and away alternate across successive meetings of a pair") {
    const Schedule s = build_round_robin_schedule(6, 20);
    std::map<std::pair<int, int>, int> last_home;
    std::map<std::pair<int, int>, int> meetings;
    for (const auto& g : s.games) {
        const std::pair<int, int> key{std::min(g.home, g.away), std::max(g.home, g.away)};
        if (meetings[key] > 0) {
            CHECK(g.home != last_home[key]);
        }
        last_home[key] = g.home;
        ++meetings[key];
    }
}

TEST_CASE("odd or tiny team counts are rejected") {
    CHECK_THROWS_AS(build_round_robin_schedule(5, 10), std::invalid_argument);
    CHECK_THROWS_AS(build_round_robin_schedule(0, 10), std::invalid_argument);
    CHECK_THROWS_AS(build_round_robin_schedule(4, 0), std::invalid_argument);
}

TEST_CASE("validation catches a short schedule") {
    Schedule s = build_round_robin_schedule(4, 4);
    s.games.pop_back();
    std::vector<int> ids{0, 1, 2, 3};
    CHECK_THROWS_AS(validate_schedule(s, ids, 4), std::runtime_error);
}
