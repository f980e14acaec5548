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

#ifndef KGAP_ABRIDGE_HPP
#define KGAP_ABRIDGE_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kgap/error.hpp"
#include "kgap/game.hpp"
#include "kgap/parity.hpp"
#include "kgap/unravel.hpp"

namespace kgap {

/**
 * Perfect-information game obtained by contracting knowledge gaps.
 * Coordinator positions (v, c) carry priority c and move to the outcome sets
 * achievable from v; Nature positions U carry the largest priority of the
 * game and move to each (u, d) in U.
 */
struct AbridgedGame
{
    struct Position
    {
        Owner owner;
        int priority;
        /** Coordinator positions only. */
        StateId state = -1;
        /** Nature positions only. */
        OutcomeSet outcomes;
        std::vector<int> successors;
    };

    std::vector<Position> positions;
    int initial = 0;
    /** Priority of Nature positions and of the initial position. */
    int top_priority = 0;
    std::map<std::pair<StateId, int>, int> coordinator_index;
    std::map<OutcomeSet, int> nature_index;

    [[nodiscard]] int size() const { return static_cast<int>(positions.size()); }
    [[nodiscard]] ParityGame parity_game(const GameGraph &g) const;
};

[[nodiscard]] AbridgedGame build_abridged(const GameGraph &g, Unraveller &trees);
[[nodiscard]] AbridgedGame build_abridged(const GameGraph &g, Budget budget = {});

/** md + 2^{md} with d the number of distinct priorities; saturates at SIZE_MAX. */
[[nodiscard]] std::size_t abridged_bound(const GameGraph &g);

struct AbridgedSolution
{
    bool coordinator_wins = false;
    /** Winner per abridged position (0 = Coordinator). */
    std::vector<int> winner;
    /**
     * Coordinator: chosen Nature position per state, the same for every c
     * (-1 where Coordinator loses). Nature: chosen successor per Nature
     * position it wins (-1 elsewhere).
     */
    std::map<StateId, int> coordinator_choice;
    std::vector<int> nature_choice;
};

/** Solves with a fresh position z_v between every (v, c) and its moves, so Coordinator's strategy ignores c. */
[[nodiscard]] AbridgedSolution solve_abridged(const GameGraph &g, const AbridgedGame &a);

struct SummaryEntry
{
    std::size_t round;
    StateId state;
    int priority;

    bool operator==(const SummaryEntry &) const = default;
};

/**
 * [π]: the initial state with the top priority, then every round at which
 * the state becomes common knowledge, with the least priority seen since the
 * previous such round.
 */
[[nodiscard]] std::vector<SummaryEntry> summarize(const GameGraph &g, const History &prefix, Budget budget = {});

/** Deterministic parity automaton over colour symbols. */
struct Dpa
{
    std::vector<std::string> states;
    std::vector<int> priority;
    int initial = 0;
    std::vector<std::string> alphabet;
    /** delta[q][symbol index] */
    std::vector<std::vector<int>> delta;

    [[nodiscard]] int symbol(const std::string &name) const;
};

/** Throws InputError unless the automaton is total and deterministic. */
[[nodiscard]] Dpa read_dpa(std::istream &in);
[[nodiscard]] Dpa load_dpa(const std::string &path);
void write_dpa(std::ostream &out, const Dpa &dpa);

/**
 * Synchronised product: the automaton reads the colour of every state
 * entered, priorities come from the automaton, and each observation is
 * paired with the automaton state. Reachable part only.
 */
[[nodiscard]] GameGraph product_with_dpa(const GameGraph &g, const Dpa &dpa);

void write_parity_game(std::ostream &out, const ParityGame &pg);
void write_abridged(std::ostream &out, const GameGraph &g, const AbridgedGame &a);
[[nodiscard]] ParityGame read_parity_game(std::istream &in);

}

#endif
