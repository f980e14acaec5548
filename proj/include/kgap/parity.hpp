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

#ifndef KGAP_PARITY_HPP
#define KGAP_PARITY_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace kgap {

enum class Owner { Coordinator = 0, Nature = 1 };

/**
 * Two-player perfect-information parity game. Coordinator wins a play iff
 * the least priority seen infinitely often is even.
 */
struct ParityGame
{
    std::vector<Owner> owner;
    std::vector<int> priority;
    std::vector<std::vector<int>> successors;
    std::vector<std::string> labels;
    int initial = 0;

    [[nodiscard]] int size() const { return static_cast<int>(owner.size()); }
    int add(Owner o, int prio, std::string label = {});
};

/** Throws InputError unless every position has a successor inside the game. */
void check_parity_game(const ParityGame &pg);

struct ParitySolution
{
    /** 0 = Coordinator, 1 = Nature. */
    std::vector<int> winner;
    /** Chosen successor for positions owned by the winner of that position; -1 elsewhere. */
    std::vector<int> strategy;

    [[nodiscard]] bool coordinator_wins(int v) const { return winner[v] == 0; }
};

/**
 * Zielonka's recursive algorithm. The returned strategies are checked before
 * returning; a failed check throws std::logic_error.
 */
[[nodiscard]] ParitySolution solve(const ParityGame &pg);

/**
 * Whether `strategy` wins for `player` from every position of `region`:
 * region must be closed under the opponent's moves and the strategy, and
 * every cycle inside must have least priority of the player's parity.
 */
[[nodiscard]] bool strategy_wins(const ParityGame &pg, int player, const std::vector<int> &region_mask, const std::vector<int> &strategy);

}

#endif
