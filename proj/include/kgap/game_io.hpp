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

#ifndef KGAP_GAME_IO_HPP
#define KGAP_GAME_IO_HPP

#include <iosfwd>
#include <string>

#include "kgap/game.hpp"

namespace kgap {

/**
 * Game file (JSON document):
 *
 *   { "players": ["1", "2"],
 *     "actions": [["in", "out"], ["in", "out"]],
 *     "states":  [{"id": "v0", "obs": ["a", "b"], "priority": 0, "color": "c"}, ...],
 *     "initial": "v0",
 *     "moves":   [{"from": "v0", "profile": ["in", "in"], "to": "v1"}, ...] }
 *
 * "color" is optional per state; an optional "format" field must read
 * "kgap-game/1". Any other field is rejected.
 */
[[nodiscard]] GameGraph read_game(std::istream &in);
[[nodiscard]] GameGraph parse_game(const std::string &text);
[[nodiscard]] GameGraph load_game(const std::string &path);

void write_game(std::ostream &out, const GameGraph &g);
[[nodiscard]] std::string serialize_game(const GameGraph &g);
void save_game(const std::string &path, const GameGraph &g);

}

#endif
