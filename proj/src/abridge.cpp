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

#include "kgap/abridge.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <fstream>
#include <limits>

#include "json_util.hpp"

namespace kgap {

ParityGame
AbridgedGame::parity_game(const GameGraph &g) const
{
    ParityGame pg;
    for (const auto &p : positions) {
        std::string label;
        if (p.owner == Owner::Coordinator) {
            label = "(" + g.state_name(p.state) + "," + std::to_string(p.priority) + ")";
        } else {
            label = "{";
            for (std::size_t k = 0; k < p.outcomes.size(); k++) {
                if (k) label += ",";
                label += "(" + g.state_name(p.outcomes[k].state) + "," + std::to_string(p.outcomes[k].priority) + ")";
            }
            label += "}";
        }
        int id = pg.add(p.owner, p.priority, label);
        pg.successors[id] = p.successors;
    }
    pg.initial = initial;
    return pg;
}

AbridgedGame
build_abridged(const GameGraph &g, Unraveller &trees)
{
    AbridgedGame a;
    a.top_priority = g.max_priority();
    std::deque<int> queue;
    auto coordinator = [&](StateId v, int c) {
        auto [it, fresh] = a.coordinator_index.emplace(std::make_pair(v, c), a.size());
        if (fresh) {
            a.positions.push_back({Owner::Coordinator, c, v, {}, {}});
            queue.push_back(it->second);
        }
        return it->second;
    };
    auto nature = [&](const OutcomeSet &u) {
        auto [it, fresh] = a.nature_index.emplace(u, a.size());
        if (fresh) {
            a.positions.push_back({Owner::Nature, a.top_priority, -1, u, {}});
            queue.push_back(it->second);
        }
        return it->second;
    };
    a.initial = coordinator(g.initial(), a.top_priority);
    while (!queue.empty()) {
        int k = queue.front();
        queue.pop_front();
        std::vector<int> succ;
        if (a.positions[k].owner == Owner::Coordinator) {
            for (const auto &u : trees.tree(a.positions[k].state).outcomes()) succ.push_back(nature(u));
        } else {
            const OutcomeSet outs = a.positions[k].outcomes;
            for (const auto &o : outs) succ.push_back(coordinator(o.state, o.priority));
        }
        a.positions[k].successors = std::move(succ);
    }
    return a;
}

AbridgedGame
build_abridged(const GameGraph &g, Budget budget)
{
    Unraveller trees(g, budget);
    return build_abridged(g, trees);
}

std::size_t
abridged_bound(const GameGraph &g)
{
    const std::size_t md = static_cast<std::size_t>(g.num_states()) * g.priorities().size();
    if (md >= std::numeric_limits<std::size_t>::digits - 1) return std::numeric_limits<std::size_t>::max();
    return md + (std::size_t{1} << md);
}

AbridgedSolution
solve_abridged(const GameGraph &g, const AbridgedGame &a)
{
    ParityGame pg = a.parity_game(g);
    std::map<StateId, int> z;
    for (const auto &[key, id] : a.coordinator_index) {
        StateId v = key.first;
        auto it = z.find(v);
        if (it == z.end()) {
            int zv = pg.add(Owner::Coordinator, a.top_priority, "z:" + g.state_name(v));
            pg.successors[zv] = a.positions[id].successors;
            it = z.emplace(v, zv).first;
        }
        pg.successors[id] = {it->second};
    }
    ParitySolution sol = solve(pg);

    AbridgedSolution res;
    res.winner.assign(sol.winner.begin(), sol.winner.begin() + a.size());
    res.coordinator_wins = sol.winner[a.initial] == 0;
    for (const auto &[v, zv] : z) res.coordinator_choice[v] = sol.winner[zv] == 0 ? sol.strategy[zv] : -1;
    res.nature_choice.assign(a.size(), -1);
    for (int k = 0; k < a.size(); k++) {
        if (a.positions[k].owner == Owner::Nature && sol.winner[k] == 1) res.nature_choice[k] = sol.strategy[k];
    }
    return res;
}

std::vector<SummaryEntry>
summarize(const GameGraph &g, const History &prefix, Budget budget)
{
    check_history(g, prefix);
    std::vector<SummaryEntry> res{{0, prefix.start, g.max_priority()}};
    std::size_t last = 0;
    int least = INT_MAX;
    for (std::size_t t = 1; t <= prefix.length(); t++) {
        least = std::min(least, g.priority(prefix.state_at(t)));
        if (ck_state_at(g, prefix.suffix_from(last).prefix(t - last), budget)) {
            res.push_back({t, prefix.state_at(t), least});
            last = t;
            least = INT_MAX;
        }
    }
    return res;
}

int
Dpa::symbol(const std::string &name) const
{
    for (std::size_t k = 0; k < alphabet.size(); k++) {
        if (alphabet[k] == name) return static_cast<int>(k);
    }
    return -1;
}

Dpa
read_dpa(std::istream &in)
{
    auto doc = detail::parse_json(in);
    detail::require_object(doc, "automaton", {"format", "states", "initial", "alphabet", "transitions"});
    Dpa d;
    std::map<std::string, int> index;
    for (const auto &s : detail::get_array(doc, "states")) {
        detail::require_object(s, "automaton state", {"id", "priority"});
        std::string id = detail::get_string(s, "id");
        if (!index.emplace(id, static_cast<int>(d.states.size())).second) throw InputError("duplicate automaton state '" + id + "'");
        d.states.push_back(id);
        int p = detail::get_int(s, "priority");
        if (p < 0) throw InputError("negative automaton priority");
        d.priority.push_back(p);
    }
    if (d.states.empty()) throw InputError("automaton has no states");
    auto state = [&](const std::string &id) {
        auto it = index.find(id);
        if (it == index.end()) throw InputError("unknown automaton state '" + id + "'");
        return it->second;
    };
    d.initial = state(detail::get_string(doc, "initial"));
    const auto &trans = detail::get_array(doc, "transitions");
    if (doc.contains("alphabet")) {
        d.alphabet = detail::as_strings(doc["alphabet"], "alphabet");
    } else {
        for (const auto &t : trans) {
            std::string c = detail::get_string(t, "color");
            if (std::find(d.alphabet.begin(), d.alphabet.end(), c) == d.alphabet.end()) d.alphabet.push_back(c);
        }
    }
    d.delta.assign(d.states.size(), std::vector<int>(d.alphabet.size(), -1));
    for (const auto &t : trans) {
        detail::require_object(t, "transition", {"from", "color", "to"});
        int q = state(detail::get_string(t, "from"));
        int c = d.symbol(detail::get_string(t, "color"));
        if (c < 0) throw InputError("transition reads a colour outside the alphabet");
        int r = state(detail::get_string(t, "to"));
        if (d.delta[q][c] >= 0 && d.delta[q][c] != r) throw InputError("automaton is not deterministic");
        d.delta[q][c] = r;
    }
    for (const auto &row : d.delta) {
        for (int r : row) {
            if (r < 0) throw InputError("automaton is not total");
        }
    }
    return d;
}

Dpa
load_dpa(const std::string &path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    return read_dpa(in);
}

void
write_dpa(std::ostream &out, const Dpa &d)
{
    detail::json doc;
    doc["format"] = "kgap-dpa/1";
    doc["states"] = detail::json::array();
    for (std::size_t q = 0; q < d.states.size(); q++) doc["states"].push_back({{"id", d.states[q]}, {"priority", d.priority[q]}});
    doc["initial"] = d.states[d.initial];
    doc["alphabet"] = d.alphabet;
    doc["transitions"] = detail::json::array();
    for (std::size_t q = 0; q < d.states.size(); q++) {
        for (std::size_t c = 0; c < d.alphabet.size(); c++) {
            doc["transitions"].push_back({{"from", d.states[q]}, {"color", d.alphabet[c]}, {"to", d.states[d.delta[q][c]]}});
        }
    }
    out << doc.dump(1) << '\n';
}

GameGraph
product_with_dpa(const GameGraph &g, const Dpa &dpa)
{
    if (!g.has_colors()) throw InputError("the game has no colour labels");
    std::vector<int> sym(g.num_colors());
    for (int c = 0; c < g.num_colors(); c++) {
        sym[c] = dpa.symbol(g.color_name(c));
        if (sym[c] < 0) throw InputError("automaton alphabet lacks colour '" + g.color_name(c) + "'");
    }
    const int n = g.num_players();
    const int nq = static_cast<int>(dpa.states.size());
    auto step = [&](int q, StateId w) { return dpa.delta[q][sym[g.color(w)]]; };
    auto name = [&](StateId v, int q) { return g.state_name(v) + "@" + dpa.states[q]; };

    GameGraph::Builder b;
    for (int i = 0; i < n; i++) {
        std::vector<std::string> acts;
        for (int a = 0; a < g.num_actions(i); a++) acts.push_back(g.action_name(i, a));
        b.player(g.player_name(i), acts);
    }
    std::vector<char> seen(static_cast<std::size_t>(g.num_states()) * nq, 0);
    std::deque<std::pair<StateId, int>> queue;
    auto visit = [&](StateId v, int q) {
        auto &s = seen[static_cast<std::size_t>(v) * nq + q];
        if (s) return;
        s = 1;
        std::vector<std::string> obs;
        for (int i = 0; i < n; i++) obs.push_back(g.observation_name(i, g.observation(i, v)) + "@" + dpa.states[q]);
        b.state(name(v, q), obs, dpa.priority[q], g.color_name(g.color(v)));
        queue.emplace_back(v, q);
    };
    int q0 = step(dpa.initial, g.initial());
    visit(g.initial(), q0);
    b.initial(name(g.initial(), q0));
    while (!queue.empty()) {
        auto [v, q] = queue.front();
        queue.pop_front();
        for (ProfileId a = 0; a < g.num_profiles(); a++) {
            auto acts = g.actions_of(a);
            std::vector<std::string> prof;
            for (int i = 0; i < n; i++) prof.push_back(g.action_name(i, acts[i]));
            for (StateId w : g.successors(v, a)) {
                int r = step(q, w);
                visit(w, r);
                b.move(name(v, q), prof, name(w, r));
            }
        }
    }
    return b.build();
}

void
write_parity_game(std::ostream &out, const ParityGame &pg)
{
    detail::json doc;
    doc["format"] = "kgap-parity/1";
    doc["initial"] = pg.initial;
    doc["positions"] = detail::json::array();
    for (int v = 0; v < pg.size(); v++) {
        detail::json p;
        p["id"] = v;
        p["owner"] = pg.owner[v] == Owner::Coordinator ? "coordinator" : "nature";
        p["priority"] = pg.priority[v];
        if (!pg.labels[v].empty()) p["label"] = pg.labels[v];
        p["successors"] = pg.successors[v];
        doc["positions"].push_back(p);
    }
    out << doc.dump(1) << '\n';
}

void
write_abridged(std::ostream &out, const GameGraph &g, const AbridgedGame &a)
{
    write_parity_game(out, a.parity_game(g));
}

ParityGame
read_parity_game(std::istream &in)
{
    auto doc = detail::parse_json(in);
    detail::require_object(doc, "parity game", {"format", "initial", "positions"});
    ParityGame pg;
    const auto &ps = detail::get_array(doc, "positions");
    for (std::size_t k = 0; k < ps.size(); k++) {
        const auto &p = ps[k];
        detail::require_object(p, "position", {"id", "owner", "priority", "label", "successors"});
        if (detail::get_int(p, "id") != static_cast<int>(k)) throw InputError("positions must be listed in id order from 0");
        std::string owner = detail::get_string(p, "owner");
        if (owner != "coordinator" && owner != "nature") throw InputError("owner must be 'coordinator' or 'nature'");
        std::string label = p.contains("label") ? detail::get_string(p, "label") : std::string();
        int id = pg.add(owner == "coordinator" ? Owner::Coordinator : Owner::Nature, detail::get_int(p, "priority"), label);
        for (const auto &s : detail::get_array(p, "successors")) pg.successors[id].push_back(detail::as_int(s, "successor"));
    }
    pg.initial = detail::get_int(doc, "initial");
    check_parity_game(pg);
    return pg;
}

}
