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

#include "kgap/game_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kgap/error.hpp"
#include "json_util.hpp"

namespace kgap {

using json = nlohmann::ordered_json;

static constexpr const char *game_format = "kgap-game/1";

GameGraph
read_game(std::istream &in)
{
    json doc = detail::parse_json(in);
    detail::require_object(doc, "game", {"format", "players", "actions", "states", "initial", "moves"});
    if (doc.contains("format") && detail::get_string(doc, "format") != game_format) {
        throw InputError("unsupported game format");
    }
    GameGraph::Builder b;
    const auto &players = detail::get_array(doc, "players");
    const auto &actions = detail::get_array(doc, "actions");
    if (players.size() != actions.size()) throw InputError("'actions' needs one list per player");
    for (std::size_t i = 0; i < players.size(); i++) {
        b.player(detail::as_string(players[i], "player id"), detail::as_strings(actions[i], "action list"));
    }
    for (const auto &s : detail::get_array(doc, "states")) {
        detail::require_object(s, "state", {"id", "obs", "priority", "color"});
        std::optional<std::string> color;
        if (s.contains("color")) color = detail::get_string(s, "color");
        b.state(detail::get_string(s, "id"), detail::as_strings(detail::get_field(s, "obs"), "observation list"),
                detail::get_int(s, "priority"), color);
    }
    b.initial(detail::get_string(doc, "initial"));
    for (const auto &m : detail::get_array(doc, "moves")) {
        detail::require_object(m, "move", {"from", "profile", "to"});
        b.move(detail::get_string(m, "from"), detail::as_strings(detail::get_field(m, "profile"), "profile"), detail::get_string(m, "to"));
    }
    return b.build();
}

GameGraph
parse_game(const std::string &text)
{
    std::istringstream in(text);
    return read_game(in);
}

GameGraph
load_game(const std::string &path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    return read_game(in);
}

void
write_game(std::ostream &out, const GameGraph &g)
{
    json doc;
    doc["format"] = game_format;
    doc["players"] = json::array();
    doc["actions"] = json::array();
    for (int i = 0; i < g.num_players(); i++) {
        doc["players"].push_back(g.player_name(i));
        json acts = json::array();
        for (int a = 0; a < g.num_actions(i); a++) acts.push_back(g.action_name(i, a));
        doc["actions"].push_back(acts);
    }
    doc["states"] = json::array();
    for (StateId v = 0; v < g.num_states(); v++) {
        json s;
        s["id"] = g.state_name(v);
        s["obs"] = json::array();
        for (int i = 0; i < g.num_players(); i++) s["obs"].push_back(g.observation_name(i, g.observation(i, v)));
        s["priority"] = g.priority(v);
        if (g.has_colors()) s["color"] = g.color_name(g.color(v));
        doc["states"].push_back(s);
    }
    doc["initial"] = g.state_name(g.initial());
    doc["moves"] = json::array();
    for (StateId v = 0; v < g.num_states(); v++) {
        for (ProfileId a = 0; a < g.num_profiles(); a++) {
            for (StateId w : g.successors(v, a)) {
                json m;
                m["from"] = g.state_name(v);
                m["profile"] = json::array();
                for (int i = 0; i < g.num_players(); i++) m["profile"].push_back(g.action_name(i, g.action_of(a, i)));
                m["to"] = g.state_name(w);
                doc["moves"].push_back(m);
            }
        }
    }
    out << doc.dump(1) << '\n';
}

std::string
serialize_game(const GameGraph &g)
{
    std::ostringstream out;
    write_game(out, g);
    return out.str();
}

void
save_game(const std::string &path, const GameGraph &g)
{
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    write_game(out, g);
}

}
