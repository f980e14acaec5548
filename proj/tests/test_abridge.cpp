/*
 * Copyright 2026 The kgap Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <catch2/catch_amalgamated.hpp>

#include <climits>
#include <cmath>
#include <set>
#include <sstream>

#include "kgap/abridge.hpp"
#include "kgap/generators.hpp"
#include "kgap/rcks.hpp"
#include "oracles.hpp"
#include "suite.hpp"

using namespace kgap;

using suite::random_dpa;

TEST_CASE("abridged games respect the size bound")
{
    for (const auto &e : suite::games()) {
        if (!check_rcks(e.game).allows_rcks) continue;
        auto a = build_abridged(e.game);
        INFO(e.name);
        CHECK(static_cast<std::size_t>(a.size()) <= abridged_bound(e.game));
        int m = e.game.num_states(), d = static_cast<int>(e.game.priorities().size());
        if (m * d < 30) CHECK(abridged_bound(e.game) == static_cast<std::size_t>(m * d + (1LL << (m * d))));
    }
}

TEST_CASE("abridged positions follow the outcome families")
{
    for (const auto &e : suite::games()) {
        if (!check_rcks(e.game).allows_rcks) continue;
        Unraveller u(e.game);
        auto a = build_abridged(e.game, u);
        INFO(e.name);
        REQUIRE(a.positions[a.initial].owner == Owner::Coordinator);
        REQUIRE(a.positions[a.initial].priority == a.top_priority);
        for (const auto &p : a.positions) {
            if (p.owner == Owner::Coordinator) {
                const auto &fam = u.tree(p.state).outcomes();
                REQUIRE(p.successors.size() == fam.size());
                for (int s : p.successors) {
                    const auto &q = a.positions[s];
                    REQUIRE(q.owner == Owner::Nature);
                    REQUIRE(q.priority == a.top_priority);
                    REQUIRE(std::find(fam.begin(), fam.end(), q.outcomes) != fam.end());
                }
            } else {
                REQUIRE(p.successors.size() == p.outcomes.size());
                for (std::size_t k = 0; k < p.successors.size(); k++) {
                    const auto &q = a.positions[p.successors[k]];
                    REQUIRE(q.owner == Owner::Coordinator);
                    REQUIRE(q.state == p.outcomes[k].state);
                    REQUIRE(q.priority == p.outcomes[k].priority);
                }
            }
        }
    }
}

TEST_CASE("abridged verdicts on the in/out examples")
{
    for (const char *id : {"1a", "1b", "2a"}) {
        GameGraph avoid = gen_figure(id).game;
        CHECK(solve_abridged(avoid, build_abridged(avoid)).coordinator_wins);
    }
    GameGraph reach = gen_figure("1a", 1, Objective::ReachSafe).game;
    CHECK_FALSE(solve_abridged(reach, build_abridged(reach)).coordinator_wins);
    GameGraph gm = gen_gm(3);
    CHECK(solve_abridged(gm, build_abridged(gm)).coordinator_wins);
}

TEST_CASE("abridged solutions agree with positional enumeration")
{
    for (const auto &e : suite::games()) {
        if (!check_rcks(e.game).allows_rcks) continue;
        auto a = build_abridged(e.game);
        auto pg = a.parity_game(e.game);
        if (pg.size() > 14) continue;
        auto s = solve_abridged(e.game, a);
        auto want = oracle::parity_winners(pg);
        INFO(e.name);
        for (int v = 0; v < a.size(); v++) CHECK(s.winner[v] == (want[v] ? 0 : 1));
        CHECK(s.coordinator_wins == (want[a.initial] != 0));
        for (const auto &[state, nat] : s.coordinator_choice) {
            if (nat < 0) continue;
            for (const auto &[key, pos] : a.coordinator_index) {
                if (key.first == state && s.winner[pos] == 0) {
                    const auto &succ = a.positions[pos].successors;
                    CHECK(std::find(succ.begin(), succ.end(), nat) != succ.end());
                }
            }
        }
    }
}

TEST_CASE("summaries mark the rounds of common knowledge")
{
    int entries = 0;
    for (std::uint64_t seed = 0; seed < 60; seed++) {
        RandomSizes sz;
        sz.states = 3;
        sz.players = 1 + static_cast<int>(seed % 2);
        sz.actions = 1;
        sz.colors = 1;
        GameGraph g = gen_random(seed, sz);
        for (const auto &h : oracle::histories(g, g.initial(), 4)) {
            std::vector<SummaryEntry> want{{0, h.start, g.max_priority()}};
            std::size_t last = 0;
            int least = INT_MAX;
            for (std::size_t t = 1; t <= h.length(); t++) {
                least = std::min(least, g.priority(h.state_at(t)));
                if (oracle::ck(g, h.suffix_from(last).prefix(t - last))) {
                    want.push_back({t, h.state_at(t), least});
                    last = t;
                    least = INT_MAX;
                }
            }
            REQUIRE(summarize(g, h) == want);
            entries += static_cast<int>(want.size());
        }
    }
    CHECK(entries > 0);
}

TEST_CASE("product with an automaton preserves recurring common knowledge")
{
    int kept = 0;
    for (std::uint64_t seed = 0; seed < 200; seed++) {
        RandomSizes sz;
        sz.states = 3;
        GameGraph g = gen_random(seed, sz);
        if (!check_rcks(g).allows_rcks) continue;
        Dpa d = random_dpa(seed, g);
        GameGraph p = product_with_dpa(g, d);
        INFO("seed " << seed);
        REQUIRE(validate(p).ok());
        REQUIRE(p.num_states() <= g.num_states() * 3);
        REQUIRE(check_rcks(p).allows_rcks);
        kept++;
    }
    CHECK(kept >= 50);
}

TEST_CASE("automata round-trip and are checked")
{
    GameGraph g = gen_random(3);
    Dpa d = random_dpa(3, g);
    std::ostringstream out;
    write_dpa(out, d);
    std::istringstream in(out.str());
    Dpa back = read_dpa(in);
    CHECK(back.states == d.states);
    CHECK(back.priority == d.priority);
    CHECK(back.delta == d.delta);
    CHECK(back.alphabet == d.alphabet);

    std::istringstream bad(R"({"states": [{"id": "a", "priority": 0}], "initial": "a", "alphabet": ["x"], "transitions": []})");
    CHECK_THROWS_AS(read_dpa(bad), InputError);
}
