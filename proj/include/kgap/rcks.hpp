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

#ifndef KGAP_RCKS_HPP
#define KGAP_RCKS_HPP

#include <optional>
#include <vector>

#include "kgap/game.hpp"

namespace kgap {

/**
 * Co-Büchi automaton over pairs of game states guessing a fork sequence
 * along a play: the first component follows the play, the second follows a
 * history that some player cannot tell apart from it. A run that stays in
 * pairs (u, u') with u ≠ u' from some point on witnesses a play on which
 * mutual knowledge of the state fails forever.
 */
struct ForkAutomaton
{
    struct Transition
    {
        ProfileId profile;
        StateId state;
        int target;
    };

    int m = 0;
    int initial = 0;
    /** Indexed by automaton state u * m + u', ordered by (profile, state, target). */
    std::vector<std::vector<Transition>> transitions;

    [[nodiscard]] int num_states() const { return m * m; }
    [[nodiscard]] int pair(StateId u, StateId u2) const { return u * m + u2; }
    [[nodiscard]] StateId first(int q) const { return q / m; }
    [[nodiscard]] StateId second(int q) const { return q % m; }
    [[nodiscard]] bool is_final(int q) const { return first(q) != second(q); }
};

[[nodiscard]] ForkAutomaton build_fork_automaton(const GameGraph &g);

/** A run of the fork automaton: stem then a loop repeated forever. */
struct ForkLasso
{
    /** Automaton states visited; runs[0] is the initial pair. */
    std::vector<int> runs;
    /** letters[k] is read between runs[k] and runs[k + 1]. */
    std::vector<Step> letters;
    /** runs[loop_start] == runs.back(); the loop is letters[loop_start..]. */
    std::size_t loop_start = 0;

    /** The first components as a history: stem followed by one pass of the loop. */
    [[nodiscard]] History play(const ForkAutomaton &a) const;
    /** The play with the loop unrolled `times` times. */
    [[nodiscard]] History unrolled(const ForkAutomaton &a, std::size_t times) const;
};

struct RcksVerdict
{
    bool allows_rcks = true;
    std::optional<ForkLasso> counterexample;
};

[[nodiscard]] RcksVerdict check_rcks(const GameGraph &g);
[[nodiscard]] RcksVerdict check_rcks(const GameGraph &g, const ForkAutomaton &a);

}

#endif
