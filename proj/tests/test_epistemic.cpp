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

#include <algorithm>
#include <map>
#include <set>

#include "kgap/epistemic.hpp"
#include "kgap/generators.hpp"
#include "oracles.hpp"

using namespace kgap;

namespace {

GameGraph
small_random(std::uint64_t seed)
{
    RandomSizes sz;
    sz.states = 3 + static_cast<int>(seed % 3);
    return gen_random(seed, sz);
}

}

TEST_CASE("fig-1a: the marked history is not mutually known")
{
    auto f = gen_figure("1a");
    CHECK_FALSE(mk_state_at(f.game, f.marked));
    CHECK_FALSE(ck_state_at(f.game, f.marked));
    auto sets = knowledge_sets(f.game, f.marked);
    CHECK(sets[0].size() == 2);
    CHECK(sets[1].size() == 1);
}

TEST_CASE("fig-1b: mutual but not common knowledge")
{
    auto f = gen_figure("1b");
    CHECK(mk_state_at(f.game, f.marked));
    CHECK(mk_order_at(f.game, f.marked, 1));
    CHECK_FALSE(ck_state_at(f.game, f.marked));
    CHECK(knowledge_order(f.game, f.marked) == 1);
}

TEST_CASE("fig-2a: knowledge of order two only")
{
    auto f = gen_figure("2a");
    CHECK(mk_order_at(f.game, f.marked, 2));
    CHECK_FALSE(mk_order_at(f.game, f.marked, 3));
    CHECK(knowledge_order(f.game, f.marked) == 2);
}

TEST_CASE("fig-2b: knowledge order grows with the loop")
{
    for (int n = 1; n <= 5; n++) {
        auto f = gen_figure("2b", n);
        INFO("n = " << n);
        CHECK(mk_order_at(f.game, f.marked, 2 * n + 1));
        CHECK_FALSE(mk_order_at(f.game, f.marked, 2 * n + 2));
        CHECK(knowledge_order(f.game, f.marked) == 2 * n + 1);
        CHECK_FALSE(ck_state_at(f.game, f.marked));
        if (n <= 2) {
            CHECK(oracle::mk_order(f.game, f.marked, 2 * n + 1));
            CHECK_FALSE(oracle::mk_order(f.game, f.marked, 2 * n + 2));
        }
    }
}

TEST_CASE("common knowledge agrees with explicit chain closure")
{
    int positive = 0, total = 0;
    for (std::uint64_t seed = 0; seed < 60; seed++) {
        GameGraph g = small_random(seed);
        for (std::size_t len = 0; len <= 3; len++) {
            auto hs = oracle::histories(g, g.initial(), len);
            for (std::size_t k = 0; k < hs.size(); k += 1 + hs.size() / 6) {
                const History &h = hs[k];
                bool expect = oracle::ck(g, h);
                INFO("seed " << seed << " history " << format_history(g, h));
                REQUIRE(ck_state_at(g, h) == expect);
                for (int order = 1; order <= 3; order++) REQUIRE(mk_order_at(g, h, order) == oracle::mk_order(g, h, order));
                REQUIRE(mk_state_at(g, h) == oracle::mk_order(g, h, 1));
                auto ko = knowledge_order(g, h);
                REQUIRE(ko.has_value() == !expect);
                if (ko) {
                    CHECK(oracle::mk_order(g, h, *ko));
                    CHECK_FALSE(oracle::mk_order(g, h, *ko + 1));
                }
                positive += expect;
                total++;
            }
        }
    }
    CHECK(positive > 0);
    CHECK(positive < total);
}

TEST_CASE("possibility sets are the histories with equal projection")
{
    for (std::uint64_t seed = 0; seed < 30; seed++) {
        GameGraph g = small_random(seed);
        auto hs = oracle::histories(g, g.initial(), 2);
        for (std::size_t k = 0; k < hs.size(); k += 1 + hs.size() / 4) {
            for (int i = 0; i < g.num_players(); i++) {
                auto got = possibility_set(g, hs[k], i);
                std::set<History> want, have(got.begin(), got.end());
                for (const auto &o : hs) {
                    if (oracle::projection(g, o, i) == oracle::projection(g, hs[k], i)) want.insert(o);
                }
                REQUIRE(have == want);
                std::set<StateId> ends;
                for (const auto &o : want) ends.insert(o.last());
                auto sets = knowledge_sets(g, hs[k]);
                REQUIRE(std::set<StateId>(sets[i].begin(), sets[i].end()) == ends);
            }
        }
    }
}

TEST_CASE("components refine along rounds")
{
    for (std::uint64_t seed = 0; seed < 40; seed++) {
        GameGraph g = small_random(seed);
        ComponentTracker t(g, g.initial());
        ComponentLayer prev = t.layer();
        for (int r = 1; r <= 4 && !t.done(); r++) {
            const auto &layer = t.advance();
            REQUIRE(layer.round == r);
            for (const auto &c : layer.components) {
                REQUIRE(c.parent >= 0);
                const auto &up = prev.components[c.parent].histories;
                for (int x : c.histories) REQUIRE(std::find(up.begin(), up.end(), t.arena().parent(x)) != up.end());
            }
            prev = layer;
        }
    }
}

TEST_CASE("component of a history is determined by one player's projection")
{
    for (std::uint64_t seed = 0; seed < 40; seed++) {
        GameGraph g = small_random(seed);
        ComponentTracker t(g, g.initial());
        for (int r = 0; r < 3 && !t.done(); r++) {
            const auto &layer = t.advance();
            std::map<std::pair<int, int>, int> owner;
            for (std::size_t c = 0; c < layer.components.size(); c++) {
                for (int x : layer.components[c].histories) {
                    for (int i = 0; i < g.num_players(); i++) {
                        auto [it, fresh] = owner.emplace(std::make_pair(i, t.arena().cls(x, i)), static_cast<int>(c));
                        REQUIRE(it->second == static_cast<int>(c));
                    }
                }
            }
        }
    }
}

TEST_CASE("G_m stays ambiguous for m^2 - 1 rounds")
{
    for (int m = 2; m <= 4; m++) {
        GameGraph g = gen_gm(m);
        auto layers = track_components(g, m * m + 1, g.initial());
        INFO("m = " << m);
        for (int r = 1; r < m * m; r++) {
            bool ambiguous = false;
            for (const auto &c : layers[r].components) ambiguous = ambiguous || !c.common_knowledge;
            CHECK(ambiguous);
        }
        for (const auto &c : layers[m * m].components) CHECK(c.common_knowledge);
    }
}

TEST_CASE("arena classes coincide with projections")
{
    for (std::uint64_t seed = 0; seed < 20; seed++) {
        GameGraph g = small_random(seed);
        HistoryArena arena(g, g.initial());
        std::vector<int> frontier{0};
        for (int r = 0; r < 3; r++) {
            std::vector<int> next;
            for (int x : frontier) {
                auto ch = arena.expand(x);
                next.insert(next.end(), ch.begin(), ch.end());
            }
            frontier = next;
        }
        for (std::size_t x = 0; x < arena.size(); x++) {
            for (std::size_t y = x; y < arena.size(); y++) {
                if (arena.depth(x) != arena.depth(y)) continue;
                auto hx = arena.history(x), hy = arena.history(y);
                for (int i = 0; i < g.num_players(); i++) {
                    REQUIRE((arena.cls(x, i) == arena.cls(y, i)) == (oracle::projection(g, hx, i) == oracle::projection(g, hy, i)));
                }
            }
        }
    }
}
