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

#include <sstream>

#include "kgap/epistemic.hpp"
#include "kgap/game_io.hpp"
#include "kgap/generators.hpp"
#include "oracles.hpp"
#include "suite.hpp"

using namespace kgap;

namespace {

bool
moves(const GameGraph &g, const std::string &from, const std::string &profile, const std::string &to)
{
    History h = parse_history(g, from + " " + profile + " " + to);
    return h.length() == 1;
}

}

TEST_CASE("G_m has 3m states")
{
    for (int m = 2; m <= 6; m++) {
        GameGraph g = gen_gm(m);
        CHECK(g.num_states() == 3 * m);
        CHECK(g.num_players() == 1);
        CHECK(g.num_profiles() == 1);
        CHECK(validate(g).ok());
    }
    CHECK_THROWS_AS(gen_gm(1), InputError);
}

TEST_CASE("fig-1a moves")
{
    GameGraph g = gen_figure("1a").game;
    CHECK(moves(g, "root", "in|in", "A"));
    CHECK(moves(g, "root", "in|in", "B"));
    CHECK(moves(g, "BA", "out|out", "safe"));
    CHECK(moves(g, "root", "in|out", "unsafe"));
    CHECK(moves(g, "AA", "out|out", "unsafe"));
    CHECK_THROWS_AS(parse_history(g, "root in|in AA"), InputError);
    CHECK(g.num_states() == 8);
}

TEST_CASE("figure ids and parameters are checked")
{
    CHECK_THROWS_AS(gen_figure("3c"), InputError);
    CHECK_THROWS_AS(gen_figure("2b", 0), InputError);
    for (int n = 1; n <= 4; n++) {
        auto f = gen_figure("2b", n);
        CHECK(f.marked.length() == static_cast<std::size_t>(n) + 3);
        CHECK(f.game.state_name(f.marked.last()) == "BB");
    }
}

TEST_CASE("reachability variants make every ordinary state odd")
{
    GameGraph g = gen_figure("2a", 1, Objective::ReachSafe).game;
    for (StateId v = 0; v < g.num_states(); v++) {
        bool safe = g.state_name(v) == "safe";
        CHECK(g.priority(v) % 2 == (safe ? 0 : 1));
    }
}

TEST_CASE("random games are reproducible")
{
    auto text = [](std::uint64_t seed) {
        std::ostringstream out;
        write_game(out, gen_random(seed));
        return out.str();
    };
    CHECK(text(1) == text(1));
    CHECK(text(1) != text(2));
}

TEST_CASE("common knowledge of the end of a history is equivalent to a safe consensus")
{
    int positive = 0, total = 0;
    for (std::uint64_t seed = 0; seed < 60; seed++) {
        GameGraph g = suite::random_single_action(seed, 3);
        for (std::size_t len = 0; len <= 3; len++) {
            auto hs = oracle::histories(g, g.initial(), len);
            for (std::size_t k = 0; k < hs.size(); k += 1 + hs.size() / 3) {
                GameGraph gpi = gen_consensus_ckgame(g, hs[k]);
                REQUIRE(validate(gpi).ok());
                bool ck = ck_state_at(g, hs[k]);
                INFO("seed " << seed << " history " << format_history(g, hs[k]));
                REQUIRE(oracle::safe_consensus_exists(gpi, len) == ck);
                positive += ck;
                total++;
            }
        }
    }
    CHECK(positive > 0);
    CHECK(positive < total);
}

TEST_CASE("consensus games need a single-action game and a valid history")
{
    GameGraph multi = gen_random(1);
    CHECK_THROWS_AS(gen_consensus_ckgame(multi, History{0, {}}), InputError);
    GameGraph g = gen_gm(2);
    History bad{0, {{0, 0}}};
    CHECK_THROWS_AS(gen_consensus_ckgame(g, bad), InputError);
}

TEST_CASE("a single tiling is the only frontier without common knowledge above the bottom")
{
    CorridorGame c(suite::single_tiling());
    REQUIRE(validate(c.game()).ok());
    const auto &d = c.dominoes();
    for (const auto &w : oracle::rows(d, 2)) {
        INFO(w[0] << w[1]);
        bool tiled = w == std::vector<std::string>{"a", "b"} || w == std::vector<std::string>{"_", "_"};
        CHECK(ck_state_at(c.game(), c.history(w)) == !tiled);
    }
    CHECK_FALSE(ck_state_at(c.game(), c.history({"_", "_", "_"})));
    CHECK_THROWS_AS(c.history({"b", "a"}), InputError);
}

TEST_CASE("tilable corridor frontiers lack common knowledge")
{
    int tilable = 0, total = 0;
    for (std::uint64_t seed = 0; seed < 30; seed++) {
        DominoSystem d = suite::random_dominoes(seed, 1 + static_cast<int>(seed % 3));
        CorridorGame c(d);
        REQUIRE(validate(c.game()).ok());
        for (std::size_t len = 1; len <= 3; len++) {
            for (const auto &w : oracle::rows(d, len)) {
                std::string word;
                for (const auto &x : w) word += x;
                INFO("seed " << seed << " frontier " << word);
                bool ck = ck_state_at(c.game(), c.history(w));
                bool t = oracle::tilable(d, w);
                if (t) CHECK_FALSE(ck);
                CHECK(ck == !oracle::stack_connected(d, w));
                tilable += t;
                total++;
            }
        }
    }
    CHECK(tilable > 0);
    CHECK(tilable < total);
}

TEST_CASE("a row below a tilable row lacks common knowledge without being tilable")
{
    DominoSystem d;
    d.dominoes = {"#", "_", "a", "c"};
    d.horizontal = {{"#", "_"}, {"_", "_"}, {"_", "#"}, {"#", "a"}, {"a", "#"}, {"#", "c"}, {"c", "#"}};
    d.vertical = {{"_", "a"}, {"c", "a"}, {"#", "#"}};
    CorridorGame c(d);
    CHECK_FALSE(oracle::tilable(d, {"c"}));
    CHECK(oracle::tilable(d, {"a"}));
    CHECK_FALSE(ck_state_at(c.game(), c.history({"c"})));
    CHECK_FALSE(oracle::ck(c.game(), c.history({"c"})));
}

TEST_CASE("malformed domino systems are rejected")
{
    DominoSystem d = suite::single_tiling();
    d.vertical.push_back({"a", "_"});
    CHECK_THROWS_AS(check_domino_system(d), InputError);
    d = suite::single_tiling();
    d.horizontal.push_back({"#", "#"});
    CHECK_THROWS_AS(check_domino_system(d), InputError);
    d = suite::single_tiling();
    d.horizontal.push_back({"_", "a"});
    CHECK_THROWS_AS(check_domino_system(d), InputError);
    std::istringstream in(R"({"dominoes": ["#", "_"], "border": "#", "bottom": "_", "horizontal": [["#", "_"], ["_", "_"], ["_", "#"]],
                              "vertical": [["#", "#"]]})");
    CHECK_NOTHROW(read_domino_system(in));
}
