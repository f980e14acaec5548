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

#include "kgap/synth.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "json_util.hpp"

namespace kgap {

std::size_t
Profile::total_states() const
{
    std::size_t n = 0;
    for (const auto &m : machines) n += m.states.size();
    return n;
}

int
Profile::largest() const
{
    int n = 0;
    for (const auto &m : machines) n = std::max(n, m.size());
    return n;
}

double
machine_size_bound_log(const GameGraph &g)
{
    double m = g.num_states();
    return std::log(m) + m * m * std::log(m);
}

int
PlayLasso::loop_priority(const GameGraph &g) const
{
    int least = std::numeric_limits<int>::max();
    for (std::size_t t = loop_start + 1; t <= play.length(); t++) least = std::min(least, g.priority(play.state_at(t)));
    return least;
}

namespace {

/** What every player does inside T_v along the stored witness for the chosen outcome set. */
struct RootPlan
{
    std::vector<std::unordered_map<int, int>> action;
    std::vector<std::unordered_map<int, StateId>> leaf;
    std::vector<std::unordered_set<int>> live;
};

RootPlan
plan_root(const GameGraph &g, const ComponentTree &t, std::size_t outcome)
{
    const int n = g.num_players();
    const HistoryArena &arena = t.arena();
    auto ws = t.witness_strategy(outcome);
    RootPlan plan;
    plan.action.resize(n);
    plan.leaf.resize(n);
    plan.live.resize(n);
    std::vector<int> follow{0};
    for (std::size_t k = 0; k < follow.size(); k++) {
        int x = follow[k];
        if (t.is_leaf_history(x)) continue;
        ProfileId a = ws.at(x);
        for (int c : arena.children(x)) {
            if (arena.profile(c) == a) follow.push_back(c);
        }
    }
    for (int x : follow) {
        for (int i = 0; i < n; i++) {
            int c = arena.cls(x, i);
            plan.live[i].insert(c);
            if (t.is_leaf_history(x)) {
                plan.leaf[i][c] = arena.state(x);
            } else {
                plan.action[i][c] = g.action_of(ws.at(x), i);
            }
        }
    }
    return plan;
}

}

Profile
transfer_coordinator(const GameGraph &g, const AbridgedGame &a, const std::map<StateId, int> &choice, Unraveller &trees)
{
    std::map<StateId, RootPlan> plans;
    auto plan = [&](StateId v) -> const RootPlan & {
        auto it = plans.find(v);
        if (it != plans.end()) return it->second;
        const ComponentTree &t = trees.tree(v);
        std::size_t idx = 0;
        auto ch = choice.find(v);
        if (ch != choice.end() && ch->second >= 0) {
            const auto &pos = a.positions.at(ch->second);
            const auto &fam = t.outcomes();
            auto f = std::lower_bound(fam.begin(), fam.end(), pos.outcomes);
            if (pos.owner != Owner::Nature || f == fam.end() || *f != pos.outcomes) {
                throw InputError("strategy names an unachievable outcome set at state '" + g.state_name(v) + "'");
            }
            idx = static_cast<std::size_t>(f - fam.begin());
        }
        return plans.emplace(v, plan_root(g, t, idx)).first->second;
    };

    Profile profile;
    for (int i = 0; i < g.num_players(); i++) {
        StrategyMachine m;
        std::map<std::pair<StateId, int>, int> ids;
        std::deque<std::pair<StateId, int>> queue;
        auto add = [&](StateId v, int c) {
            auto [it, fresh] = ids.emplace(std::make_pair(v, c), m.size());
            if (fresh) {
                m.states.emplace_back();
                m.states.back().label = g.state_name(v) + "/" + std::to_string(c);
                queue.emplace_back(v, c);
            }
            return it->second;
        };
        m.initial = add(g.initial(), trees.tree(g.initial()).arena().cls(0, i));
        while (!queue.empty()) {
            auto [v, c] = queue.front();
            queue.pop_front();
            int id = ids.at({v, c});
            const RootPlan &p = plan(v);
            const HistoryArena &arena = trees.tree(v).arena();
            int act = p.action[i].at(c);
            std::vector<int> next(g.num_observations(i), -1);
            for (int b = 0; b < g.num_observations(i); b++) {
                auto c2 = arena.next_class(i, c, act, b);
                if (!c2 || !p.live[i].count(*c2)) continue;
                auto leaf = p.leaf[i].find(*c2);
                if (leaf != p.leaf[i].end()) {
                    StateId u = leaf->second;
                    next[b] = add(u, trees.tree(u).arena().cls(0, i));
                } else {
                    next[b] = add(v, *c2);
                }
            }
            m.states[id].action = act;
            m.states[id].next = std::move(next);
        }
        profile.machines.push_back(std::move(m));
    }
    return profile;
}

namespace {

class Product
{
public:
    Product(const GameGraph &g, const Profile &p) : g_(g), p_(p)
    {
        if (static_cast<int>(p.machines.size()) != g.num_players()) throw InputError("profile needs one machine per player");
        std::vector<int> init{g.initial()};
        for (const auto &m : p.machines) init.push_back(m.initial);
        intern(init);
        for (std::size_t k = 0; k < nodes_.size(); k++) {
            std::vector<int> cur = nodes_[k];
            ProfileId a = outputs(cur);
            for (StateId w : g.successors(cur[0], a)) {
                std::vector<int> nxt{w};
                for (int i = 0; i < g.num_players(); i++) nxt.push_back(step(i, cur[i + 1], w));
                int j = intern(nxt);
                edges_[k].push_back(j);
            }
        }
    }

    ProfileId outputs(const std::vector<int> &node) const
    {
        std::vector<int> acts;
        for (int i = 0; i < g_.num_players(); i++) acts.push_back(p_.machines[i].states.at(node[i + 1]).action);
        return g_.profile_of(acts);
    }

    int step(int i, int q, StateId w) const
    {
        const auto &st = p_.machines[i].states.at(q);
        int b = g_.observation(i, w);
        if (b >= static_cast<int>(st.next.size()) || st.next[b] < 0) {
            throw InputError("observation mismatch: machine of player '" + g_.player_name(i) + "' cannot read '" + g_.observation_name(i, b) + "'");
        }
        return st.next[b];
    }

    std::size_t size() const { return nodes_.size(); }
    const std::vector<int> &node(int k) const { return nodes_[k]; }
    const std::vector<int> &edges(int k) const { return edges_[k]; }

private:
    int intern(const std::vector<int> &key)
    {
        auto [it, fresh] = index_.emplace(key, static_cast<int>(nodes_.size()));
        if (fresh) {
            nodes_.push_back(key);
            edges_.emplace_back();
        }
        return it->second;
    }

    const GameGraph &g_;
    const Profile &p_;
    std::map<std::vector<int>, int> index_;
    std::vector<std::vector<int>> nodes_;
    std::vector<std::vector<int>> edges_;
};

}

VerifyResult
verify(const GameGraph &g, const Profile &profile)
{
    Product prod(g, profile);
    const int N = static_cast<int>(prod.size());
    VerifyResult res;
    res.product_states = prod.size();
    auto prio = [&](int k) { return g.priority(prod.node(k)[0]); };

    for (int q : g.priorities()) {
        if (q % 2 == 0) continue;
        auto keep = [&](int k) { return prio(k) >= q; };
        std::vector<int> index(N, -1), low(N, 0), comp(N, -1);
        std::vector<char> on(N, 0);
        std::vector<int> st;
        int counter = 0, nc = 0;
        std::function<void(int)> dfs = [&](int v) {
            index[v] = low[v] = counter++;
            st.push_back(v);
            on[v] = 1;
            for (int w : prod.edges(v)) {
                if (!keep(w)) continue;
                if (index[w] < 0) {
                    dfs(w);
                    low[v] = std::min(low[v], low[w]);
                } else if (on[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
            }
            if (low[v] == index[v]) {
                int w;
                do {
                    w = st.back();
                    st.pop_back();
                    on[w] = 0;
                    comp[w] = nc;
                } while (w != v);
                nc++;
            }
        };
        for (int v = 0; v < N; v++) {
            if (keep(v) && index[v] < 0) dfs(v);
        }
        int hit = -1;
        for (int v = 0; v < N && hit < 0; v++) {
            if (!keep(v) || prio(v) != q) continue;
            for (int w : prod.edges(v)) {
                if (keep(w) && comp[w] == comp[v]) {
                    hit = v;
                    break;
                }
            }
        }
        if (hit < 0) continue;

        // Shortest path from `from` to `to` through allowed nodes; a nonempty cycle when from == to.
        auto path_to = [&](int from, int to, auto allowed) {
            std::vector<int> pred(N, -1);
            std::vector<char> seen(N, 0);
            seen[from] = from != to;
            std::deque<int> queue{from};
            while (!queue.empty()) {
                int v = queue.front();
                queue.pop_front();
                for (int w : prod.edges(v)) {
                    if (!allowed(w) || seen[w]) continue;
                    seen[w] = 1;
                    pred[w] = v;
                    if (w == to) {
                        std::vector<int> path{to};
                        for (int x = v; x != from; x = pred[x]) path.push_back(x);
                        path.push_back(from);
                        std::reverse(path.begin(), path.end());
                        return path;
                    }
                    queue.push_back(w);
                }
            }
            return std::vector<int>{from};
        };
        std::vector<int> stem = hit == 0 ? std::vector<int>{0} : path_to(0, hit, [](int) { return true; });
        auto loop = path_to(hit, hit, [&](int w) { return keep(w) && comp[w] == comp[hit]; });

        PlayLasso lasso;
        lasso.play.start = g.initial();
        auto extend = [&](const std::vector<int> &path) {
            for (std::size_t k = 1; k < path.size(); k++) lasso.play.append(prod.outputs(prod.node(path[k - 1])), prod.node(path[k])[0]);
        };
        extend(stem);
        lasso.loop_start = lasso.play.length();
        extend(loop);
        res.winning = false;
        res.counterexample = std::move(lasso);
        return res;
    }
    return res;
}

bool
follows_profile(const GameGraph &g, const Profile &profile, const PlayLasso &lasso)
{
    try {
        check_history(g, lasso.play);
    } catch (const InputError &) {
        return false;
    }
    if (lasso.loop_start >= lasso.play.length() || lasso.play.state_at(lasso.loop_start) != lasso.play.last()) return false;
    const int n = g.num_players();
    std::vector<int> q;
    for (const auto &m : profile.machines) q.push_back(m.initial);
    std::vector<int> at_loop;
    for (std::size_t t = 0; t < lasso.play.length(); t++) {
        if (t == lasso.loop_start) at_loop = q;
        std::vector<int> acts;
        for (int i = 0; i < n; i++) acts.push_back(profile.machines[i].states[q[i]].action);
        const Step &s = lasso.play.steps[t];
        if (s.profile != g.profile_of(acts)) return false;
        for (int i = 0; i < n; i++) {
            const auto &next = profile.machines[i].states[q[i]].next;
            int b = g.observation(i, s.state);
            if (b >= static_cast<int>(next.size()) || next[b] < 0) return false;
            q[i] = next[b];
        }
    }
    return q == at_loop;
}

SpoilerPlay
construct_spoiler(const GameGraph &g, const AbridgedGame &a, const std::vector<int> &r_hat, const Profile &profile, Unraveller &trees)
{
    const int n = g.num_players();
    if (static_cast<int>(profile.machines.size()) != n) throw InputError("profile needs one machine per player");
    auto step = [&](int i, int q, StateId w) {
        const auto &next = profile.machines[i].states.at(q).next;
        int b = g.observation(i, w);
        if (b >= static_cast<int>(next.size()) || next[b] < 0) {
            throw InputError("observation mismatch: machine of player '" + g.player_name(i) + "' cannot read '" + g.observation_name(i, b) + "'");
        }
        return next[b];
    };

    const std::size_t m = static_cast<std::size_t>(g.num_states());
    const std::size_t bound = abridged_bound(g);
    std::size_t cap = std::numeric_limits<std::size_t>::max();
    if (bound < cap / (m * m + 1)) cap = bound * (m * m + 1) + 1;

    SpoilerPlay sp;
    History &play = sp.lasso.play;
    play.start = g.initial();
    StateId v = g.initial();
    std::vector<int> q;
    for (const auto &mc : profile.machines) q.push_back(mc.initial);
    int pos = a.initial;
    std::map<std::pair<StateId, std::vector<int>>, std::size_t> seen;

    for (;;) {
        auto [it, fresh] = seen.emplace(std::make_pair(v, q), sp.rounds.size());
        sp.rounds.push_back(play.length());
        sp.positions.push_back(pos);
        if (!fresh) {
            sp.lasso.loop_start = sp.rounds[it->second];
            if (sp.lasso.loop_priority(g) % 2 == 0) throw NotWinningError("the Nature strategy does not defeat the profile");
            return sp;
        }
        if (play.length() > cap) throw NotWinningError("no losing lasso within the round bound");

        const ComponentTree &t = trees.tree(v);
        const HistoryArena &arena = t.arena();
        struct Leaf
        {
            Outcome outcome;
            std::vector<Step> path;
            std::vector<int> q;
        };
        std::vector<Leaf> leaves;
        std::vector<Step> path;
        auto walk = [&](auto &&self, int x, const std::vector<int> &qx) -> void {
            std::vector<int> acts;
            for (int i = 0; i < n; i++) acts.push_back(profile.machines[i].states.at(qx[i]).action);
            ProfileId prof = g.profile_of(acts);
            for (int c : arena.children(x)) {
                if (arena.profile(c) != prof) continue;
                std::vector<int> qc;
                for (int i = 0; i < n; i++) qc.push_back(step(i, qx[i], arena.state(c)));
                path.push_back({prof, arena.state(c)});
                if (t.is_leaf_history(c)) {
                    leaves.push_back({{arena.state(c), arena.gap_min(c)}, path, qc});
                } else {
                    self(self, c, qc);
                }
                path.pop_back();
            }
        };
        walk(walk, 0, q);

        OutcomeSet u;
        for (const auto &l : leaves) u.push_back(l.outcome);
        std::sort(u.begin(), u.end());
        u.erase(std::unique(u.begin(), u.end()), u.end());
        auto nat = a.nature_index.find(u);
        if (nat == a.nature_index.end()) throw std::logic_error("profile reaches an outcome set missing from the abridged game");
        int target = r_hat.at(nat->second);
        if (target < 0) throw NotWinningError("the Nature strategy is undefined at a reached position");
        const auto &tp = a.positions.at(target);
        Outcome want{tp.state, tp.priority};
        const Leaf *best = nullptr;
        for (const auto &l : leaves) {
            if (l.outcome == want && (!best || l.path < best->path)) best = &l;
        }
        if (!best) throw NotWinningError("the Nature strategy picks an outcome outside the reached set");
        for (const auto &s : best->path) play.steps.push_back(s);
        v = want.state;
        q = best->q;
        pos = target;
    }
}

Profile
random_profile(const GameGraph &g, std::uint64_t seed, int max_states)
{
    std::mt19937_64 rng(seed);
    auto pick = [&](int bound) { return static_cast<int>(rng() % static_cast<std::uint64_t>(bound)); };
    Profile p;
    for (int i = 0; i < g.num_players(); i++) {
        StrategyMachine m;
        int k = 1 + pick(std::max(1, max_states));
        for (int s = 0; s < k; s++) {
            StrategyMachine::State st;
            st.action = pick(g.num_actions(i));
            for (int b = 0; b < g.num_observations(i); b++) st.next.push_back(pick(k));
            st.label = std::to_string(s);
            m.states.push_back(std::move(st));
        }
        p.machines.push_back(std::move(m));
    }
    return p;
}

void
write_profile(std::ostream &out, const GameGraph &g, const Profile &p)
{
    detail::json doc;
    doc["format"] = "kgap-strategy/1";
    doc["players"] = detail::json::array();
    for (std::size_t i = 0; i < p.machines.size(); i++) {
        const auto &m = p.machines[i];
        detail::json pj;
        pj["player"] = g.player_name(static_cast<int>(i));
        pj["initial"] = m.initial;
        pj["states"] = detail::json::array();
        for (int s = 0; s < m.size(); s++) {
            const auto &st = m.states[s];
            detail::json sj;
            sj["id"] = s;
            if (!st.label.empty()) sj["label"] = st.label;
            sj["action"] = g.action_name(static_cast<int>(i), st.action);
            detail::json next = detail::json::object();
            for (std::size_t b = 0; b < st.next.size(); b++) {
                if (st.next[b] >= 0) next[g.observation_name(static_cast<int>(i), static_cast<int>(b))] = st.next[b];
            }
            sj["next"] = next;
            pj["states"].push_back(sj);
        }
        doc["players"].push_back(pj);
    }
    out << doc.dump(1) << '\n';
}

Profile
read_profile(std::istream &in, const GameGraph &g)
{
    auto doc = detail::parse_json(in);
    detail::require_object(doc, "strategy profile", {"format", "players"});
    const auto &players = detail::get_array(doc, "players");
    if (static_cast<int>(players.size()) != g.num_players()) throw InputError("profile needs one machine per player");
    Profile p;
    for (int i = 0; i < g.num_players(); i++) {
        const auto &pj = players[i];
        detail::require_object(pj, "machine", {"player", "initial", "states"});
        if (detail::get_string(pj, "player") != g.player_name(i)) throw InputError("machines must follow the game's player order");
        StrategyMachine m;
        const auto &states = detail::get_array(pj, "states");
        for (std::size_t s = 0; s < states.size(); s++) {
            const auto &sj = states[s];
            detail::require_object(sj, "machine state", {"id", "label", "action", "next"});
            if (detail::get_int(sj, "id") != static_cast<int>(s)) throw InputError("machine states must be listed in id order from 0");
            StrategyMachine::State st;
            if (sj.contains("label")) st.label = detail::get_string(sj, "label");
            auto act = g.find_action(i, detail::get_string(sj, "action"));
            if (!act) throw InputError("unknown action in machine state");
            st.action = *act;
            st.next.assign(g.num_observations(i), -1);
            const auto &next = detail::get_field(sj, "next");
            if (!next.is_object()) throw InputError("'next' must map observations to states");
            for (auto it = next.begin(); it != next.end(); ++it) {
                auto b = g.find_observation(i, it.key());
                if (!b) throw InputError("unknown observation '" + it.key() + "' in machine");
                st.next[*b] = detail::as_int(it.value(), "next state");
            }
            m.states.push_back(std::move(st));
        }
        m.initial = detail::get_int(pj, "initial");
        for (const auto &st : m.states) {
            for (int r : st.next) {
                if (r >= m.size()) throw InputError("machine transition to an unknown state");
            }
        }
        if (m.states.empty() || m.initial < 0 || m.initial >= m.size()) throw InputError("machine has no valid initial state");
        p.machines.push_back(std::move(m));
    }
    return p;
}

Profile
load_profile(const std::string &path, const GameGraph &g)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    return read_profile(in, g);
}

}
