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

#ifndef KGAP_SYNTH_HPP
#define KGAP_SYNTH_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kgap/abridge.hpp"
#include "kgap/game.hpp"
#include "kgap/unravel.hpp"

namespace kgap {

/**
 * Moore machine for one player. The initial state has already read the
 * observation of the initial game state; each round the machine outputs its
 * action and then reads the next observation.
 */
struct StrategyMachine
{
    struct State
    {
        int action = 0;
        /** Indexed by observation id; -1 where the observation cannot occur. */
        std::vector<int> next;
        std::string label;
    };

    std::vector<State> states;
    int initial = 0;

    [[nodiscard]] int size() const { return static_cast<int>(states.size()); }
};

struct Profile
{
    std::vector<StrategyMachine> machines;

    [[nodiscard]] std::size_t total_states() const;
    [[nodiscard]] int largest() const;
};

/**
 * Strategy profile following a c-uniform Coordinator strategy of the abridged
 * game: `choice` maps each state to the Nature position chosen at (v, c).
 * Player i's machine remembers the current root v and its observation class
 * within T_v, and restarts at the root u once a leaf where u is common
 * knowledge is reached.
 */
[[nodiscard]] Profile transfer_coordinator(const GameGraph &g, const AbridgedGame &a, const std::map<StateId, int> &choice, Unraveller &trees);

/** m · m^{m²} in natural log. */
[[nodiscard]] double machine_size_bound_log(const GameGraph &g);

/** A play ending in a loop: play.state_at(loop_start) == play.last(). */
struct PlayLasso
{
    History play;
    std::size_t loop_start = 0;

    /** Least priority on the loop. */
    [[nodiscard]] int loop_priority(const GameGraph &g) const;
};

struct VerifyResult
{
    bool winning = true;
    std::optional<PlayLasso> counterexample;
    std::size_t product_states = 0;
};

/** Throws InputError when a machine has no move for an observation that occurs. */
[[nodiscard]] VerifyResult verify(const GameGraph &g, const Profile &profile);

/** Whether the lasso is a play consistent with the profile (each round's profile is what the machines output). */
[[nodiscard]] bool follows_profile(const GameGraph &g, const Profile &profile, const PlayLasso &lasso);

struct SpoilerPlay
{
    PlayLasso lasso;
    /** Abridged Coordinator positions visited at the rounds of common knowledge. */
    std::vector<int> positions;
    /** Rounds of common knowledge in the play. */
    std::vector<std::size_t> rounds;
};

/**
 * Plays the profile against Nature following `r_hat` (Nature position →
 * chosen successor) gap by gap until the configuration repeats. Throws
 * NotWinningError when the resulting loop is won by the profile or r_hat is
 * undefined where needed.
 */
[[nodiscard]] SpoilerPlay construct_spoiler(const GameGraph &g, const AbridgedGame &a, const std::vector<int> &r_hat, const Profile &profile,
                                            Unraveller &trees);

/** Machines with 1..max_states states, random outputs and transitions; total. */
[[nodiscard]] Profile random_profile(const GameGraph &g, std::uint64_t seed, int max_states = 3);

void write_profile(std::ostream &out, const GameGraph &g, const Profile &p);
[[nodiscard]] Profile read_profile(std::istream &in, const GameGraph &g);
[[nodiscard]] Profile load_profile(const std::string &path, const GameGraph &g);

}

#endif
