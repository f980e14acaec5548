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

#include "kgap/game.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "kgap/error.hpp"

namespace kgap {

std::optional<int>
GameGraph::find_action(int i, std::string_view name) const
{
    const auto &acts = actions_[i];
    for (std::size_t a = 0; a < acts.size(); a++) {
        if (acts[a] == name) return static_cast<int>(a);
    }
    return std::nullopt;
}

std::optional<int>
GameGraph::find_observation(int i, std::string_view name) const
{
    const auto &names = obs_names_[i];
    for (std::size_t b = 0; b < names.size(); b++) {
        if (names[b] == name) return static_cast<int>(b);
    }
    return std::nullopt;
}

std::optional<StateId>
GameGraph::find_state(std::string_view name) const
{
    auto it = state_index_.find(std::string(name));
    if (it == state_index_.end()) return std::nullopt;
    return it->second;
}

bool
GameGraph::has_move(StateId v, ProfileId a, StateId w) const
{
    auto succ = successors(v, a);
    return std::binary_search(succ.begin(), succ.end(), w);
}

ProfileId
GameGraph::profile_of(std::span<const int> actions) const
{
    ProfileId a = 0;
    for (int i = 0; i < num_players(); i++) a += actions[i] * radix_[i];
    return a;
}

std::vector<int>
GameGraph::actions_of(ProfileId a) const
{
    std::vector<int> res(players_.size());
    for (int i = 0; i < num_players(); i++) res[i] = action_of(a, i);
    return res;
}

std::string
GameGraph::profile_name(ProfileId a) const
{
    std::string res;
    for (int i = 0; i < num_players(); i++) {
        if (i) res += '|';
        res += action_name(i, action_of(a, i));
    }
    return res;
}

GameGraph::Builder &
GameGraph::Builder::player(std::string name, std::vector<std::string> actions)
{
    players_.emplace_back(std::move(name), std::move(actions));
    return *this;
}

GameGraph::Builder &
GameGraph::Builder::state(std::string name, std::vector<std::string> obs, int priority, std::optional<std::string> color)
{
    states_.push_back({std::move(name), std::move(obs), priority, std::move(color)});
    return *this;
}

GameGraph::Builder &
GameGraph::Builder::initial(std::string name)
{
    initial_ = std::move(name);
    return *this;
}

GameGraph::Builder &
GameGraph::Builder::move(std::string from, std::vector<std::string> profile, std::string to)
{
    moves_.push_back({std::move(from), std::move(profile), std::move(to)});
    return *this;
}

GameGraph::Builder &
GameGraph::Builder::fill(std::string from, std::string to)
{
    fills_.push_back({std::move(from), std::move(to)});
    return *this;
}

GameGraph
GameGraph::Builder::build() const
{
    GameGraph g;
    if (players_.empty()) throw InputError("game has no players");
    const std::size_t n = players_.size();
    for (const auto &[name, acts] : players_) {
        if (std::find(g.players_.begin(), g.players_.end(), name) != g.players_.end()) {
            throw InputError("duplicate player '" + name + "'");
        }
        if (acts.empty()) throw InputError("player '" + name + "' has no actions");
        for (std::size_t a = 0; a < acts.size(); a++) {
            if (std::find(acts.begin(), acts.begin() + a, acts[a]) != acts.begin() + a) {
                throw InputError("duplicate action '" + acts[a] + "' for player '" + name + "'");
            }
        }
        g.players_.push_back(name);
        g.actions_.push_back(acts);
    }
    g.radix_.assign(n, 1);
    for (int i = static_cast<int>(n) - 2; i >= 0; i--) g.radix_[i] = g.radix_[i + 1] * static_cast<int>(g.actions_[i + 1].size());
    g.num_profiles_ = g.radix_[0] * static_cast<int>(g.actions_[0].size());

    if (states_.empty()) throw InputError("game has no states");
    g.obs_names_.resize(n);
    std::vector<std::unordered_map<std::string, int>> obs_index(n);
    std::unordered_map<std::string, int> color_index;
    std::size_t colored = 0;
    for (const auto &s : states_) {
        if (g.state_index_.count(s.name)) throw InputError("duplicate state '" + s.name + "'");
        if (s.obs.size() != n) throw InputError("state '" + s.name + "' needs one observation per player");
        if (s.priority < 0) throw InputError("state '" + s.name + "' has a negative priority");
        g.state_index_.emplace(s.name, static_cast<StateId>(g.states_.size()));
        g.states_.push_back(s.name);
        for (std::size_t i = 0; i < n; i++) {
            auto [it, fresh] = obs_index[i].emplace(s.obs[i], static_cast<int>(g.obs_names_[i].size()));
            if (fresh) g.obs_names_[i].push_back(s.obs[i]);
            g.obs_.push_back(it->second);
        }
        g.priority_.push_back(s.priority);
        if (s.color) {
            colored++;
            auto [it, fresh] = color_index.emplace(*s.color, static_cast<int>(g.color_names_.size()));
            if (fresh) g.color_names_.push_back(*s.color);
            g.color_.push_back(it->second);
        }
    }
    if (colored != 0 && colored != states_.size()) throw InputError("colours must be given for all states or none");
    g.priority_values_ = g.priority_;
    std::sort(g.priority_values_.begin(), g.priority_values_.end());
    g.priority_values_.erase(std::unique(g.priority_values_.begin(), g.priority_values_.end()), g.priority_values_.end());
    g.max_priority_ = g.priority_values_.back();

    if (!initial_) throw InputError("no initial state");
    auto lookup = [&](const std::string &name) {
        auto it = g.state_index_.find(name);
        if (it == g.state_index_.end()) throw InputError("unknown state '" + name + "'");
        return it->second;
    };
    g.initial_ = lookup(*initial_);

    std::vector<std::tuple<StateId, ProfileId, StateId>> triples;
    std::vector<int> acts(n);
    for (const auto &m : moves_) {
        StateId from = lookup(m.from);
        StateId to = lookup(m.to);
        if (m.profile.size() != n) throw InputError("move from '" + m.from + "' needs one action per player");
        for (std::size_t i = 0; i < n; i++) {
            auto a = g.find_action(static_cast<int>(i), m.profile[i]);
            if (!a) throw InputError("unknown action '" + m.profile[i] + "' for player '" + g.players_[i] + "'");
            acts[i] = *a;
        }
        triples.emplace_back(from, g.profile_of(acts), to);
    }
    for (const auto &f : fills_) {
        StateId from = lookup(f.from);
        StateId to = lookup(f.to);
        std::vector<bool> used(g.num_profiles_);
        for (const auto &[v, a, w] : triples) {
            if (v == from) used[a] = true;
        }
        for (ProfileId a = 0; a < g.num_profiles_; a++) {
            if (!used[a]) triples.emplace_back(from, a, to);
        }
    }
    std::sort(triples.begin(), triples.end());
    triples.erase(std::unique(triples.begin(), triples.end()), triples.end());
    const std::size_t slots = g.states_.size() * static_cast<std::size_t>(g.num_profiles_);
    g.succ_begin_.assign(slots + 1, 0);
    for (const auto &[v, a, w] : triples) g.succ_begin_[static_cast<std::size_t>(v) * g.num_profiles_ + a + 1]++;
    for (std::size_t k = 0; k < slots; k++) g.succ_begin_[k + 1] += g.succ_begin_[k];
    g.succ_.reserve(triples.size());
    for (const auto &t : triples) g.succ_.push_back(std::get<2>(t));
    return g;
}

History
History::prefix(std::size_t k) const
{
    History h{start, {steps.begin(), steps.begin() + static_cast<std::ptrdiff_t>(k)}};
    return h;
}

History
History::suffix_from(std::size_t k) const
{
    History h{state_at(k), {steps.begin() + static_cast<std::ptrdiff_t>(k), steps.end()}};
    return h;
}

void
check_history(const GameGraph &g, const History &h)
{
    if (h.start < 0 || h.start >= g.num_states()) throw InputError("history starts at an unknown state");
    StateId v = h.start;
    for (std::size_t k = 0; k < h.steps.size(); k++) {
        const auto &s = h.steps[k];
        if (s.profile < 0 || s.profile >= g.num_profiles() || s.state < 0 || s.state >= g.num_states() ||
            !g.has_move(v, s.profile, s.state)) {
            throw InputError("invalid history: step " + std::to_string(k + 1) + " is not a move");
        }
        v = s.state;
    }
}

History
parse_history(const GameGraph &g, std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::vector<std::string> tokens;
    for (std::string t; in >> t;) tokens.push_back(t);
    if (tokens.empty() || tokens.size() % 2 == 0) throw InputError("history must alternate states and action profiles");
    auto state = [&](const std::string &name) {
        auto v = g.find_state(name);
        if (!v) throw InputError("unknown state '" + name + "' in history");
        return *v;
    };
    History h{state(tokens[0]), {}};
    std::vector<int> acts(g.num_players());
    for (std::size_t k = 1; k < tokens.size(); k += 2) {
        std::string_view prof = tokens[k];
        for (int i = 0; i < g.num_players(); i++) {
            auto bar = prof.find('|');
            if ((bar == std::string_view::npos) != (i == g.num_players() - 1)) {
                throw InputError("profile '" + tokens[k] + "' needs one action per player");
            }
            auto name = prof.substr(0, bar);
            auto a = g.find_action(i, name);
            if (!a) throw InputError("unknown action '" + std::string(name) + "' in history");
            acts[i] = *a;
            if (bar != std::string_view::npos) prof.remove_prefix(bar + 1);
        }
        h.append(g.profile_of(acts), state(tokens[k + 1]));
    }
    check_history(g, h);
    return h;
}

std::string
format_history(const GameGraph &g, const History &h)
{
    std::string res = g.state_name(h.start);
    for (const auto &s : h.steps) {
        res += ' ';
        res += g.profile_name(s.profile);
        res += ' ';
        res += g.state_name(s.state);
    }
    return res;
}

std::vector<int>
obs_projection(const GameGraph &g, const History &h, int i)
{
    check_history(g, h);
    std::vector<int> res;
    res.reserve(2 * h.length() + 1);
    res.push_back(g.observation(i, h.start));
    for (const auto &s : h.steps) {
        res.push_back(g.action_of(s.profile, i));
        res.push_back(g.observation(i, s.state));
    }
    return res;
}

ValidationReport
validate(const GameGraph &g)
{
    ValidationReport rep;
    for (StateId v = 0; v < g.num_states(); v++) {
        for (ProfileId a = 0; a < g.num_profiles(); a++) {
            if (g.successors(v, a).empty()) {
                rep.violations.push_back({Violation::Kind::Totality,
                                          "no move from state '" + g.state_name(v) + "' under profile " + g.profile_name(a)});
            }
        }
    }
    for (int i = 0; i < g.num_players(); i++) {
        std::unordered_map<int, StateId> prio_rep, color_rep;
        for (StateId v = 0; v < g.num_states(); v++) {
            int b = g.observation(i, v);
            auto [it, fresh] = prio_rep.emplace(b, v);
            if (!fresh && g.priority(it->second) != g.priority(v)) {
                rep.violations.push_back({Violation::Kind::Observability,
                                          "player '" + g.player_name(i) + "' observes '" + g.observation_name(i, b) + "' at states '" +
                                              g.state_name(it->second) + "' and '" + g.state_name(v) + "' of different priority"});
            }
            if (g.has_colors()) {
                auto [jt, cfresh] = color_rep.emplace(b, v);
                if (!cfresh && g.color(jt->second) != g.color(v)) {
                    rep.violations.push_back({Violation::Kind::ColorObservability,
                                              "player '" + g.player_name(i) + "' observes '" + g.observation_name(i, b) + "' at states '" +
                                                  g.state_name(jt->second) + "' and '" + g.state_name(v) + "' of different colour"});
                }
            }
        }
    }
    return rep;
}

void
require_valid(const GameGraph &g)
{
    auto rep = validate(g);
    if (rep.ok()) return;
    std::string msg = "invalid game:";
    for (const auto &v : rep.violations) msg += "\n  " + v.message;
    throw InputError(msg);
}

}
