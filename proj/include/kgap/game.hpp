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

#ifndef KGAP_GAME_HPP
#define KGAP_GAME_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace kgap {

using StateId = int;
using ProfileId = int;

/**
 * A game graph with imperfect information: players, per-player actions and
 * observations, a parity colouring and labelled moves. Immutable once built.
 *
 * Action profiles are encoded as dense integers in mixed radix with player 0
 * as the most significant digit, so profile ids enumerate profiles in
 * lexicographic order.
 */
class GameGraph
{
public:
    class Builder;

    [[nodiscard]] int num_players() const { return static_cast<int>(players_.size()); }
    [[nodiscard]] int num_states() const { return static_cast<int>(states_.size()); }
    [[nodiscard]] int num_profiles() const { return num_profiles_; }

    [[nodiscard]] const std::string &player_name(int i) const { return players_[i]; }
    [[nodiscard]] int num_actions(int i) const { return static_cast<int>(actions_[i].size()); }
    [[nodiscard]] const std::string &action_name(int i, int a) const { return actions_[i][a]; }
    [[nodiscard]] std::optional<int> find_action(int i, std::string_view name) const;
    [[nodiscard]] int num_observations(int i) const { return static_cast<int>(obs_names_[i].size()); }
    [[nodiscard]] const std::string &observation_name(int i, int b) const { return obs_names_[i][b]; }
    [[nodiscard]] std::optional<int> find_observation(int i, std::string_view name) const;

    [[nodiscard]] const std::string &state_name(StateId v) const { return states_[v]; }
    [[nodiscard]] std::optional<StateId> find_state(std::string_view name) const;
    [[nodiscard]] StateId initial() const { return initial_; }

    /** β^i(v) */
    [[nodiscard]] int observation(int i, StateId v) const { return obs_[static_cast<std::size_t>(v) * players_.size() + i]; }
    [[nodiscard]] int priority(StateId v) const { return priority_[v]; }
    [[nodiscard]] int max_priority() const { return max_priority_; }
    /** Sorted distinct priorities occurring in the graph. */
    [[nodiscard]] const std::vector<int> &priorities() const { return priority_values_; }

    [[nodiscard]] bool has_colors() const { return !color_.empty(); }
    [[nodiscard]] int color(StateId v) const { return color_[v]; }
    [[nodiscard]] int num_colors() const { return static_cast<int>(color_names_.size()); }
    [[nodiscard]] const std::string &color_name(int c) const { return color_names_[c]; }

    /** Sorted targets of moves (v, a, ·). */
    [[nodiscard]] std::span<const StateId> successors(StateId v, ProfileId a) const
    {
        std::size_t k = static_cast<std::size_t>(v) * num_profiles_ + a;
        return {succ_.data() + succ_begin_[k], succ_.data() + succ_begin_[k + 1]};
    }
    [[nodiscard]] bool has_move(StateId v, ProfileId a, StateId w) const;

    [[nodiscard]] int action_of(ProfileId a, int i) const { return (a / radix_[i]) % static_cast<int>(actions_[i].size()); }
    [[nodiscard]] ProfileId profile_of(std::span<const int> actions) const;
    [[nodiscard]] std::vector<int> actions_of(ProfileId a) const;
    /** "a|b" in player order. */
    [[nodiscard]] std::string profile_name(ProfileId a) const;

    [[nodiscard]] std::size_t num_moves() const { return succ_.size(); }

private:
    std::vector<std::string> players_;
    std::vector<std::vector<std::string>> actions_;
    std::vector<std::vector<std::string>> obs_names_;
    std::vector<std::string> states_;
    std::unordered_map<std::string, StateId> state_index_;
    std::vector<int> obs_;
    std::vector<int> priority_;
    std::vector<int> priority_values_;
    int max_priority_ = 0;
    std::vector<int> color_;
    std::vector<std::string> color_names_;
    StateId initial_ = 0;
    int num_profiles_ = 1;
    std::vector<int> radix_;
    std::vector<std::size_t> succ_begin_;
    std::vector<StateId> succ_;
};

class GameGraph::Builder
{
public:
    /** Adds a player with its ordered action names. */
    Builder &player(std::string name, std::vector<std::string> actions);
    /** Adds a state; `obs` holds one observation symbol per player. */
    Builder &state(std::string name, std::vector<std::string> obs, int priority, std::optional<std::string> color = std::nullopt);
    Builder &initial(std::string name);
    Builder &move(std::string from, std::vector<std::string> profile, std::string to);
    /** Adds a move for every profile that has no move from `from` yet. */
    Builder &fill(std::string from, std::string to);

    /** Throws InputError on dangling ids or dimension mismatches. Totality and observability are left to validate(). */
    [[nodiscard]] GameGraph build() const;

private:
    struct RawState
    {
        std::string name;
        std::vector<std::string> obs;
        int priority;
        std::optional<std::string> color;
    };
    struct RawMove
    {
        std::string from;
        std::vector<std::string> profile;
        std::string to;
    };
    struct RawFill
    {
        std::string from;
        std::string to;
    };
    std::vector<std::pair<std::string, std::vector<std::string>>> players_;
    std::vector<RawState> states_;
    std::optional<std::string> initial_;
    std::vector<RawMove> moves_;
    std::vector<RawFill> fills_;
};

struct Step
{
    ProfileId profile;
    StateId state;

    bool operator==(const Step &) const = default;
    auto operator<=>(const Step &) const = default;
};

/** v0 a1 v1 ... aℓ vℓ */
struct History
{
    StateId start = 0;
    std::vector<Step> steps;

    [[nodiscard]] std::size_t length() const { return steps.size(); }
    [[nodiscard]] StateId last() const { return steps.empty() ? start : steps.back().state; }
    [[nodiscard]] StateId state_at(std::size_t k) const { return k == 0 ? start : steps[k - 1].state; }
    [[nodiscard]] History prefix(std::size_t k) const;
    [[nodiscard]] History suffix_from(std::size_t k) const;
    History &append(ProfileId a, StateId v)
    {
        steps.push_back({a, v});
        return *this;
    }

    bool operator==(const History &) const = default;
    auto operator<=>(const History &) const = default;
};

/** Throws InputError unless every step is a move of g. */
void check_history(const GameGraph &g, const History &h);

/** Parses `v0 a1|b1 v1 ...`; actions joined by '|' in player order. */
[[nodiscard]] History parse_history(const GameGraph &g, std::string_view text);
[[nodiscard]] std::string format_history(const GameGraph &g, const History &h);

/**
 * β^i(π): observation ids at even positions, own action ids at odd positions.
 * Two histories are indistinguishable for player i iff these are equal.
 */
[[nodiscard]] std::vector<int> obs_projection(const GameGraph &g, const History &h, int i);

struct Violation
{
    enum class Kind { Totality, Observability, ColorObservability };
    Kind kind;
    std::string message;
};

struct ValidationReport
{
    std::vector<Violation> violations;

    [[nodiscard]] bool ok() const { return violations.empty(); }
};

[[nodiscard]] ValidationReport validate(const GameGraph &g);

/** Throws InputError listing the violations when g is not valid. */
void require_valid(const GameGraph &g);

}

#endif
