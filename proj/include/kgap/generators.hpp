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

#ifndef KGAP_GENERATORS_HPP
#define KGAP_GENERATORS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kgap/game.hpp"

namespace kgap {

/**
 * One player with a single action observing white and black states. From
 * the initial state Nature enters either a cycle of m-1 white states and
 * one black state z, or a path of m white states with self-loops separated
 * by black states and ending in z. 3m states.
 */
[[nodiscard]] GameGraph gen_gm(int m);

enum class Objective { AvoidUnsafe, ReachSafe };

struct FigureGame
{
    GameGraph game;
    /** The history the example singles out. */
    History marked;
};

/**
 * Two-player consensus games with actions in/out and sinks "safe" and
 * "unsafe". Every profile without a listed move leads to "unsafe"; the
 * "dots" state stands for an arbitrary continuation and loops while the
 * players agree.
 *
 * Ids: "1a", "1b", "2a", "2b". For "2b", n is the number of turns the marked
 * history takes on the self-loop at A11.
 */
[[nodiscard]] FigureGame gen_figure(std::string_view id, int n = 1, Objective objective = Objective::AvoidUnsafe);

/**
 * G_π for a single-action game g: copies of g, a fresh path spelling π, and
 * in/out actions; agreeing on out is safe exactly at the end of π and at
 * copies of its last state. The objective is to avoid "unsafe".
 */
[[nodiscard]] GameGraph gen_consensus_ckgame(const GameGraph &g, const History &pi);

struct DominoSystem
{
    std::vector<std::string> dominoes;
    std::string border = "#";
    std::string bottom = "_";
    std::vector<std::pair<std::string, std::string>> horizontal;
    /** (lower, upper) */
    std::vector<std::pair<std::string, std::string>> vertical;
};

/** Throws InputError if the system is malformed. */
void check_domino_system(const DominoSystem &d);
[[nodiscard]] DominoSystem read_domino_system(std::istream &in);
[[nodiscard]] DominoSystem load_domino_system(const std::string &path);

class CorridorGame
{
public:
    explicit CorridorGame(DominoSystem d);

    [[nodiscard]] const GameGraph &game() const { return game_; }
    [[nodiscard]] const DominoSystem &dominoes() const { return d_; }
    /** The row w played on singleton states and closed by the safe sink. */
    [[nodiscard]] History history(const std::vector<std::string> &w) const;

private:
    DominoSystem d_;
    GameGraph game_;
};

[[nodiscard]] CorridorGame gen_corridor_game(const DominoSystem &d);

struct RandomSizes
{
    int states = 4;
    int players = 2;
    int actions = 2;
    int observations = 2;
    int priorities = 2;
    int colors = 2;
    int max_targets = 2;
};

/** Deterministic in (seed, sizes). An "unsafe" sink is added when some profile has no move. */
[[nodiscard]] GameGraph gen_random(std::uint64_t seed, const RandomSizes &sizes = {});

}

#endif
