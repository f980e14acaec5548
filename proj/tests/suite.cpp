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

#include "suite.hpp"

#include <algorithm>
#include <random>

namespace kgap::suite {

std::vector<Entry>
games()
{
    std::vector<Entry> res;
    for (const char *id : {"1a", "1b", "2a"}) {
        res.push_back({std::string("fig-") + id + "-avoid", gen_figure(id).game});
        res.push_back({std::string("fig-") + id + "-reach", gen_figure(id, 1, Objective::ReachSafe).game});
    }
    for (int n = 1; n <= 3; n++) res.push_back({"fig-2b-" + std::to_string(n), gen_figure("2b", n).game});
    for (int m = 2; m <= 4; m++) res.push_back({"gm-" + std::to_string(m), gen_gm(m)});
    res.push_back({"corridor-single", gen_corridor_game(single_tiling()).game()});
    GameGraph g2 = gen_gm(2);
    res.push_back({"consensus-gm2", gen_consensus_ckgame(g2, parse_history(g2, "init go p1 go p1"))});
    for (std::uint64_t seed = 1; seed <= 16; seed++) {
        RandomSizes sz;
        sz.states = 3 + static_cast<int>(seed % 2);
        res.push_back({"random-" + std::to_string(seed), gen_random(seed, sz)});
    }
    return res;
}

DominoSystem
single_tiling()
{
    DominoSystem d;
    d.dominoes = {"#", "_", "a", "b"};
    d.horizontal = {{"#", "_"}, {"_", "_"}, {"_", "#"}, {"#", "a"}, {"a", "b"}, {"b", "#"}};
    d.vertical = {{"_", "a"}, {"_", "b"}, {"#", "#"}};
    return d;
}

DominoSystem
random_dominoes(std::uint64_t seed, int inner)
{
    std::mt19937_64 rng(seed);
    auto coin = [&] { return rng() % 2 == 0; };
    DominoSystem d;
    d.dominoes = {"#", "_"};
    std::vector<std::string> letters;
    for (int k = 0; k < inner; k++) letters.push_back(std::string(1, static_cast<char>('a' + k)));
    d.dominoes.insert(d.dominoes.end(), letters.begin(), letters.end());
    d.horizontal = {{"#", "_"}, {"_", "_"}, {"_", "#"}};
    d.vertical = {{"#", "#"}};
    for (const auto &x : letters) {
        if (coin()) d.horizontal.emplace_back("#", x);
        if (coin()) d.horizontal.emplace_back(x, "#");
        for (const auto &y : letters) {
            if (coin()) d.horizontal.emplace_back(x, y);
        }
    }
    std::vector<std::string> lower = letters;
    lower.push_back("_");
    for (const auto &x : lower) {
        for (const auto &y : letters) {
            if (coin()) d.vertical.emplace_back(x, y);
        }
    }
    return d;
}

GameGraph
random_single_action(std::uint64_t seed, int states)
{
    RandomSizes sz;
    sz.states = states;
    sz.players = 2;
    sz.actions = 1;
    sz.observations = 2;
    sz.priorities = 1;
    sz.colors = 1;
    return gen_random(seed, sz);
}

ParityGame
random_parity(std::uint64_t seed, int max_size, int priorities)
{
    std::mt19937_64 rng(seed);
    auto pick = [&](int bound) { return static_cast<int>(rng() % static_cast<std::uint64_t>(bound)); };
    ParityGame pg;
    int n = 1 + pick(max_size);
    for (int v = 0; v < n; v++) pg.add(pick(2) == 0 ? Owner::Coordinator : Owner::Nature, pick(priorities));
    for (int v = 0; v < n; v++) {
        int k = 1 + pick(3);
        for (int t = 0; t < k; t++) {
            int w = pick(n);
            if (std::find(pg.successors[v].begin(), pg.successors[v].end(), w) == pg.successors[v].end()) pg.successors[v].push_back(w);
        }
    }
    return pg;
}

Dpa
random_dpa(std::uint64_t seed, const GameGraph &g, int states)
{
    std::mt19937_64 rng(seed);
    Dpa d;
    for (int c = 0; c < g.num_colors(); c++) d.alphabet.push_back(g.color_name(c));
    for (int q = 0; q < states; q++) {
        d.states.push_back("q" + std::to_string(q));
        d.priority.push_back(static_cast<int>(rng() % 3));
        std::vector<int> row;
        for (std::size_t s = 0; s < d.alphabet.size(); s++) row.push_back(static_cast<int>(rng() % states));
        d.delta.push_back(row);
    }
    return d;
}

}
