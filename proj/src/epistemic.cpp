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

#include "kgap/epistemic.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace kgap {

HistoryArena::HistoryArena(const GameGraph &g, StateId root)
    : g_(&g), n_(static_cast<std::size_t>(g.num_players())), class_index_(n_), next_class_(n_, 0)
{
    nodes_.push_back({-1, -1, root, 0, INT_MAX});
    for (std::size_t i = 0; i < n_; i++) cls_.push_back(intern(static_cast<int>(i), -1, -1, g.observation(static_cast<int>(i), root)));
}

static std::uint64_t
class_key(int parent_cls, int a, int b)
{
    return (static_cast<std::uint64_t>(parent_cls + 1) << 32) | (static_cast<std::uint64_t>(a + 1) << 16) | static_cast<std::uint64_t>(b);
}

int
HistoryArena::intern(int i, int parent_cls, int a, int b)
{
    auto [it, fresh] = class_index_[i].emplace(class_key(parent_cls, a, b), next_class_[i]);
    if (fresh) next_class_[i]++;
    return it->second;
}

std::optional<int>
HistoryArena::next_class(int i, int c, int a, int b) const
{
    auto it = class_index_[i].find(class_key(c, a, b));
    if (it == class_index_[i].end()) return std::nullopt;
    return it->second;
}

int
HistoryArena::add(int parent, ProfileId a, StateId w)
{
    int id = static_cast<int>(nodes_.size());
    const Node &p = nodes_[parent];
    nodes_.push_back({parent, a, w, p.depth + 1, std::min(p.gap_min, g_->priority(w))});
    for (std::size_t i = 0; i < n_; i++) {
        int pc = cls_[static_cast<std::size_t>(parent) * n_ + i];
        cls_.push_back(intern(static_cast<int>(i), pc, g_->action_of(a, static_cast<int>(i)), g_->observation(static_cast<int>(i), w)));
    }
    return id;
}

std::span<const int>
HistoryArena::expand(int x)
{
    if (nodes_[x].first_child < 0) {
        int first = static_cast<int>(child_ids_.size());
        int count = 0;
        for (ProfileId a = 0; a < g_->num_profiles(); a++) {
            for (StateId w : g_->successors(nodes_[x].state, a)) {
                child_ids_.push_back(add(x, a, w));
                count++;
            }
        }
        nodes_[x].first_child = first;
        nodes_[x].num_children = count;
    }
    return children(x);
}

std::span<const int>
HistoryArena::children(int x) const
{
    const Node &n = nodes_[x];
    if (n.first_child < 0) return {};
    return {child_ids_.data() + n.first_child, static_cast<std::size_t>(n.num_children)};
}

std::optional<int>
HistoryArena::child(int x, ProfileId a, StateId w) const
{
    auto kids = children(x);
    auto it = std::lower_bound(kids.begin(), kids.end(), std::make_pair(a, w), [&](int c, const std::pair<ProfileId, StateId> &key) {
        return std::make_pair(nodes_[c].profile, nodes_[c].state) < key;
    });
    if (it == kids.end() || nodes_[*it].profile != a || nodes_[*it].state != w) return std::nullopt;
    return *it;
}

History
HistoryArena::history(int x) const
{
    History h;
    std::vector<Step> rev;
    for (; nodes_[x].parent >= 0; x = nodes_[x].parent) rev.push_back({nodes_[x].profile, nodes_[x].state});
    h.start = nodes_[x].state;
    h.steps.assign(rev.rbegin(), rev.rend());
    return h;
}

int
HistoryArena::locate(const History &h)
{
    if (h.start != nodes_[0].state) throw InputError("history does not start at the arena root");
    int x = 0;
    for (const auto &s : h.steps) {
        expand(x);
        auto c = child(x, s.profile, s.state);
        if (!c) throw InputError("invalid history: not a sequence of moves");
        x = *c;
    }
    return x;
}

std::vector<std::vector<int>>
split_components(const HistoryArena &arena, std::span<const int> nodes)
{
    std::vector<int> uf(nodes.size());
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](int x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    const int n = arena.game().num_players();
    for (int i = 0; i < n; i++) {
        std::unordered_map<int, int> first;
        for (std::size_t k = 0; k < nodes.size(); k++) {
            auto [it, fresh] = first.emplace(arena.cls(nodes[k], i), static_cast<int>(k));
            if (!fresh) {
                int a = find(it->second), b = find(static_cast<int>(k));
                if (a != b) uf[std::max(a, b)] = std::min(a, b);
            }
        }
    }
    std::vector<std::vector<int>> res;
    std::vector<int> slot(nodes.size(), -1);
    for (std::size_t k = 0; k < nodes.size(); k++) {
        int r = find(static_cast<int>(k));
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(res.size());
            res.emplace_back();
        }
        res[slot[r]].push_back(nodes[k]);
    }
    return res;
}

static EpistemicComponent
make_component(const HistoryArena &arena, int round, std::vector<int> members, int parent)
{
    EpistemicComponent c;
    c.round = round;
    c.parent = parent;
    c.gap_min = arena.gap_min(members.front());
    for (int x : members) c.end_states.push_back(arena.state(x));
    c.common_knowledge = std::all_of(c.end_states.begin(), c.end_states.end(), [&](StateId v) { return v == c.end_states.front(); });
    c.histories = std::move(members);
    return c;
}

ComponentTracker::ComponentTracker(const GameGraph &g, StateId root, Mode mode, Budget budget)
    : arena_(g, root), mode_(mode), meter_(budget.max_histories, "explored histories")
{
    layer_.components.push_back(make_component(arena_, 0, {0}, -1));
}

bool
ComponentTracker::done() const
{
    if (mode_ == Mode::All) return false;
    if (layer_.round == 0) return false;
    return std::all_of(layer_.components.begin(), layer_.components.end(), [](const EpistemicComponent &c) { return c.common_knowledge; });
}

const ComponentLayer &
ComponentTracker::advance()
{
    ComponentLayer next;
    next.round = layer_.round + 1;
    for (std::size_t p = 0; p < layer_.components.size(); p++) {
        const auto &comp = layer_.components[p];
        if (mode_ == Mode::UntilCommonKnowledge && layer_.round > 0 && comp.common_knowledge) continue;
        std::vector<int> ext;
        for (int x : comp.histories) {
            auto kids = arena_.expand(x);
            meter_.charge(kids.size());
            ext.insert(ext.end(), kids.begin(), kids.end());
        }
        for (auto &members : split_components(arena_, ext)) {
            next.components.push_back(make_component(arena_, next.round, std::move(members), static_cast<int>(p)));
        }
    }
    layer_ = std::move(next);
    return layer_;
}

std::vector<ComponentLayer>
track_components(const GameGraph &g, int depth, StateId root, Budget budget)
{
    ComponentTracker t(g, root, ComponentTracker::Mode::All, budget);
    std::vector<ComponentLayer> res{t.layer()};
    for (int k = 0; k < depth; k++) res.push_back(t.advance());
    return res;
}

std::vector<History>
possibility_set(const GameGraph &g, const History &h, int i, Budget budget)
{
    check_history(g, h);
    BudgetMeter meter(budget.max_histories, "explored histories");
    std::vector<History> res;
    History cur{h.start, {}};
    auto dfs = [&](auto &&self, std::size_t k) -> void {
        meter.charge();
        if (k == h.length()) {
            res.push_back(cur);
            return;
        }
        const Step &s = h.steps[k];
        int own = g.action_of(s.profile, i);
        int obs = g.observation(i, s.state);
        for (ProfileId a = 0; a < g.num_profiles(); a++) {
            if (g.action_of(a, i) != own) continue;
            for (StateId w : g.successors(cur.last(), a)) {
                if (g.observation(i, w) != obs) continue;
                cur.append(a, w);
                self(self, k + 1);
                cur.steps.pop_back();
            }
        }
    };
    dfs(dfs, 0);
    return res;
}

std::vector<std::vector<StateId>>
knowledge_sets(const GameGraph &g, const History &h)
{
    check_history(g, h);
    std::vector<std::vector<StateId>> res;
    for (int i = 0; i < g.num_players(); i++) {
        std::vector<char> cur(g.num_states(), 0);
        cur[h.start] = 1;
        for (const auto &s : h.steps) {
            std::vector<char> next(g.num_states(), 0);
            int own = g.action_of(s.profile, i);
            int obs = g.observation(i, s.state);
            for (StateId u = 0; u < g.num_states(); u++) {
                if (!cur[u]) continue;
                for (ProfileId a = 0; a < g.num_profiles(); a++) {
                    if (g.action_of(a, i) != own) continue;
                    for (StateId w : g.successors(u, a)) {
                        if (g.observation(i, w) == obs) next[w] = 1;
                    }
                }
            }
            cur.swap(next);
        }
        std::vector<StateId> set;
        for (StateId v = 0; v < g.num_states(); v++) {
            if (cur[v]) set.push_back(v);
        }
        res.push_back(std::move(set));
    }
    return res;
}

bool
mk_state_at(const GameGraph &g, const History &h)
{
    for (const auto &set : knowledge_sets(g, h)) {
        if (set.size() != 1 || set.front() != h.last()) return false;
    }
    return true;
}

namespace {

/**
 * The ∼-component of h among same-length histories. A chain between
 * length-ℓ histories projects to a chain between their prefixes, so the
 * component at round k+1 lies inside the prolongations of the component
 * at round k.
 */
struct Closure
{
    HistoryArena arena;
    std::vector<int> members;
    int target = 0;

    Closure(const GameGraph &g, const History &h, Budget budget) : arena(g, h.start)
    {
        check_history(g, h);
        BudgetMeter meter(budget.max_histories, "explored histories");
        members = {0};
        for (const auto &s : h.steps) {
            std::vector<int> ext;
            for (int x : members) {
                auto kids = arena.expand(x);
                meter.charge(kids.size());
                ext.insert(ext.end(), kids.begin(), kids.end());
            }
            target = *arena.child(target, s.profile, s.state);
            for (auto &comp : split_components(arena, ext)) {
                if (std::find(comp.begin(), comp.end(), target) != comp.end()) {
                    members = std::move(comp);
                    break;
                }
            }
        }
    }

    /** Length of the shortest ∼-chain from h to each member (same order as members). */
    [[nodiscard]] std::vector<int> chain_distances() const
    {
        const int n = arena.game().num_players();
        std::vector<std::unordered_map<int, std::vector<int>>> by_class(n);
        std::unordered_map<int, int> index;
        for (std::size_t k = 0; k < members.size(); k++) {
            index.emplace(members[k], static_cast<int>(k));
            for (int i = 0; i < n; i++) by_class[i][arena.cls(members[k], i)].push_back(static_cast<int>(k));
        }
        std::vector<int> dist(members.size(), -1);
        std::deque<int> queue;
        int t = index.at(target);
        dist[t] = 0;
        queue.push_back(t);
        while (!queue.empty()) {
            int k = queue.front();
            queue.pop_front();
            for (int i = 0; i < n; i++) {
                auto it = by_class[i].find(arena.cls(members[k], i));
                if (it == by_class[i].end()) continue;
                for (int j : it->second) {
                    if (dist[j] < 0) {
                        dist[j] = dist[k] + 1;
                        queue.push_back(j);
                    }
                }
                by_class[i].erase(it);
            }
        }
        return dist;
    }
};

}

bool
mk_order_at(const GameGraph &g, const History &h, int k, Budget budget)
{
    if (k < 1) throw InputError("knowledge order must be at least 1");
    Closure c(g, h, budget);
    auto dist = c.chain_distances();
    for (std::size_t j = 0; j < c.members.size(); j++) {
        if (dist[j] <= k && c.arena.state(c.members[j]) != h.last()) return false;
    }
    return true;
}

bool
ck_state_at(const GameGraph &g, const History &h, Budget budget)
{
    Closure c(g, h, budget);
    return std::all_of(c.members.begin(), c.members.end(), [&](int x) { return c.arena.state(x) == h.last(); });
}

std::optional<int>
knowledge_order(const GameGraph &g, const History &h, Budget budget)
{
    Closure c(g, h, budget);
    auto dist = c.chain_distances();
    std::optional<int> nearest;
    for (std::size_t j = 0; j < c.members.size(); j++) {
        if (c.arena.state(c.members[j]) != h.last() && (!nearest || dist[j] < *nearest)) nearest = dist[j];
    }
    if (!nearest) return std::nullopt;
    return *nearest - 1;
}

}
