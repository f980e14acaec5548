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

#include "kgap/unravel.hpp"

#include <algorithm>
#include <ostream>

#include "kgap/rcks.hpp"

namespace kgap {

OutcomeSet
merge_outcomes(const OutcomeSet &a, const OutcomeSet &b)
{
    OutcomeSet res;
    res.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(res));
    return res;
}

namespace {

class TreeBuilder
{
public:
    TreeBuilder(const GameGraph &g, const HistoryArena &arena, const std::vector<char> &leaf, std::vector<ComponentTree::Node> &nodes,
                Budget budget)
        : g_(g), arena_(arena), leaf_(leaf), nodes_(nodes), assignments_(budget.max_histories, "action assignments"),
          sets_(budget.max_outcome_sets, "outcome sets")
    {
    }

    void process(int k)
    {
        if (nodes_[k].leaf) {
            int x = nodes_[k].histories.front();
            nodes_[k].family = {{{arena_.state(x), arena_.gap_min(x)}}};
            nodes_[k].witnesses = {{-1, {}}};
            return;
        }
        expand(k);
        for (std::size_t b = 0; b < nodes_[k].branches.size(); b++) {
            for (int c : nodes_[k].branches[b].children) {
                if (done_.size() <= static_cast<std::size_t>(c)) done_.resize(c + 1, 0);
                if (!done_[c]) {
                    done_[c] = 1;
                    process(c);
                }
            }
        }
        combine(k);
    }

private:
    /** Enumerates admissible assignments in lexicographic action order and records one branch per distinct child list. */
    void expand(int k)
    {
        const int n = g_.num_players();
        const std::vector<int> hist = nodes_[k].histories;
        // digit[x][i]: position of the (i, class) digit for history x
        std::vector<std::vector<int>> digit(hist.size(), std::vector<int>(n));
        std::vector<int> radix;
        for (int i = 0; i < n; i++) {
            std::unordered_map<int, int> local;
            for (std::size_t x = 0; x < hist.size(); x++) {
                auto [it, fresh] = local.emplace(arena_.cls(hist[x], i), static_cast<int>(radix.size()));
                if (fresh) radix.push_back(g_.num_actions(i));
                digit[x][i] = it->second;
            }
        }
        std::vector<int> value(radix.size(), 0);
        std::map<std::vector<int>, int> seen;
        std::vector<int> acts(n);
        for (;;) {
            assignments_.charge();
            ComponentTree::Branch br;
            std::vector<int> ext;
            for (std::size_t x = 0; x < hist.size(); x++) {
                for (int i = 0; i < n; i++) acts[i] = value[digit[x][i]];
                ProfileId a = g_.profile_of(acts);
                br.assignment.push_back(a);
                for (int c : arena_.children(hist[x])) {
                    if (arena_.profile(c) == a) ext.push_back(c);
                }
            }
            for (auto &comp : split_components(arena_, ext)) {
                std::sort(comp.begin(), comp.end());
                br.children.push_back(intern(comp, k));
            }
            std::vector<int> key = br.children;
            std::sort(key.begin(), key.end());
            if (seen.emplace(key, 0).second) nodes_[k].branches.push_back(std::move(br));

            std::size_t d = radix.size();
            while (d > 0) {
                if (++value[d - 1] < radix[d - 1]) break;
                value[d - 1] = 0;
                d--;
            }
            if (d == 0) break;
        }
    }

    int intern(const std::vector<int> &comp, int parent)
    {
        auto [it, fresh] = index_.emplace(comp, static_cast<int>(nodes_.size()));
        if (fresh) {
            ComponentTree::Node node;
            node.depth = nodes_[parent].depth + 1;
            node.parent = parent;
            node.leaf = leaf_[comp.front()] != 0;
            node.gap_min = arena_.gap_min(comp.front());
            node.histories = comp;
            nodes_.push_back(std::move(node));
        }
        return it->second;
    }

    void combine(int k)
    {
        std::map<OutcomeSet, ComponentTree::Witness> family;
        for (std::size_t b = 0; b < nodes_[k].branches.size(); b++) {
            std::map<OutcomeSet, std::vector<int>> combos{{OutcomeSet{}, std::vector<int>{}}};
            for (int c : nodes_[k].branches[b].children) {
                std::map<OutcomeSet, std::vector<int>> next;
                const auto &fam = nodes_[c].family;
                for (const auto &[set, choice] : combos) {
                    for (std::size_t j = 0; j < fam.size(); j++) {
                        auto merged = merge_outcomes(set, fam[j]);
                        if (next.count(merged)) continue;
                        sets_.charge();
                        auto ch = choice;
                        ch.push_back(static_cast<int>(j));
                        next.emplace(std::move(merged), std::move(ch));
                    }
                }
                combos = std::move(next);
            }
            for (auto &[set, choice] : combos) family.emplace(set, ComponentTree::Witness{static_cast<int>(b), choice});
        }
        for (auto &[set, w] : family) {
            nodes_[k].family.push_back(set);
            nodes_[k].witnesses.push_back(std::move(w));
        }
    }

    const GameGraph &g_;
    const HistoryArena &arena_;
    const std::vector<char> &leaf_;
    std::vector<ComponentTree::Node> &nodes_;
    std::map<std::vector<int>, int> index_;
    std::vector<char> done_;
    BudgetMeter assignments_;
    BudgetMeter sets_;
};

}

namespace {

struct Scan
{
    std::unique_ptr<HistoryArena> arena;
    std::vector<char> leaf;
    int ambiguous = 0;
    std::vector<StateId> leaf_states;
};

/** The unfolding from v cut at common knowledge, without the strategy structure. */
Scan
scan_unfolding(const GameGraph &g, StateId v, Budget budget)
{
    const int m = g.num_states();
    const int cap = m * m + 1;
    ComponentTracker tracker(g, v, ComponentTracker::Mode::UntilCommonKnowledge, budget);
    std::vector<std::pair<int, bool>> marks;
    Scan s;
    while (!tracker.done()) {
        if (tracker.layer().round >= cap) throw NotRcksError("knowledge gap longer than m^2 rounds");
        const auto &layer = tracker.advance();
        for (const auto &c : layer.components) {
            if (!c.common_knowledge) s.ambiguous = std::max(s.ambiguous, layer.round);
            for (int x : c.histories) marks.emplace_back(x, c.common_knowledge);
            if (c.common_knowledge) s.leaf_states.push_back(c.end_states.front());
        }
    }
    s.arena = std::make_unique<HistoryArena>(std::move(tracker.arena()));
    s.leaf.assign(s.arena->size(), 0);
    for (auto [x, ck] : marks) s.leaf[x] = ck ? 1 : 0;
    std::sort(s.leaf_states.begin(), s.leaf_states.end());
    s.leaf_states.erase(std::unique(s.leaf_states.begin(), s.leaf_states.end()), s.leaf_states.end());
    return s;
}

void
require_rcks(const GameGraph &g)
{
    if (!check_rcks(g).allows_rcks) throw NotRcksError("the game does not allow recurring common knowledge of the state");
}

}

ComponentTree
build_tree(const GameGraph &g, StateId v, Budget budget)
{
    require_rcks(g);
    Scan s = scan_unfolding(g, v, budget);
    ComponentTree t;
    t.g_ = &g;
    t.root_ = v;
    t.arena_ = std::move(s.arena);
    t.leaf_history_ = std::move(s.leaf);
    t.ambiguous_depth_ = s.ambiguous;
    t.leaf_states_ = std::move(s.leaf_states);

    ComponentTree::Node root;
    root.gap_min = INT_MAX;
    root.histories = {0};
    t.nodes_.push_back(std::move(root));
    TreeBuilder builder(g, *t.arena_, t.leaf_history_, t.nodes_, budget);
    builder.process(0);
    return t;
}

std::unordered_map<int, ProfileId>
ComponentTree::witness_strategy(std::size_t k) const
{
    std::unordered_map<int, ProfileId> res;
    auto walk = [&](auto &&self, int node, std::size_t f) -> void {
        const Node &n = nodes_[node];
        if (n.leaf) return;
        const Witness &w = n.witnesses[f];
        const Branch &b = n.branches[w.branch];
        for (std::size_t x = 0; x < n.histories.size(); x++) res.emplace(n.histories[x], b.assignment[x]);
        for (std::size_t c = 0; c < b.children.size(); c++) self(self, b.children[c], static_cast<std::size_t>(w.choice[c]));
    };
    walk(walk, 0, k);
    return res;
}

void
ComponentTree::dump(std::ostream &out) const
{
    out << "tree root " << g_->state_name(root_) << " nodes " << nodes_.size() << " ambiguous_depth " << ambiguous_depth_ << '\n';
    for (std::size_t k = 0; k < nodes_.size(); k++) {
        const Node &n = nodes_[k];
        out << "node " << k << " parent " << n.parent << " depth " << n.depth << " cks " << (n.leaf || n.depth == 0 ? 1 : 0) << " d ";
        if (n.depth == 0) {
            out << '-';
        } else {
            out << n.gap_min;
        }
        out << " ends";
        for (int x : n.histories) out << ' ' << g_->state_name(arena_->state(x));
        out << '\n';
        for (std::size_t b = 0; b < n.branches.size(); b++) {
            out << "  branch " << b << " children";
            for (int c : n.branches[b].children) out << ' ' << c;
            out << '\n';
        }
    }
}

Unraveller::Unraveller(const GameGraph &g, Budget budget) : g_(&g), budget_(budget)
{
    require_rcks(g);
}

const ComponentTree &
Unraveller::tree(StateId v)
{
    auto it = trees_.find(v);
    if (it == trees_.end()) it = trees_.emplace(v, build_tree(*g_, v, budget_)).first;
    return it->second;
}

const std::vector<StateId> &
Unraveller::roots()
{
    if (!roots_done_) {
        roots_ = {g_->initial()};
        std::vector<char> seen(g_->num_states(), 0);
        seen[g_->initial()] = 1;
        for (std::size_t k = 0; k < roots_.size(); k++) {
            for (StateId u : tree(roots_[k]).leaf_states()) {
                if (!seen[u]) {
                    seen[u] = 1;
                    roots_.push_back(u);
                }
            }
        }
        roots_done_ = true;
    }
    return roots_;
}

int
Unraveller::gap_size()
{
    int gap = 0;
    for (StateId v : roots()) gap = std::max(gap, tree(v).ambiguous_depth());
    return gap;
}

int
gap_size(const GameGraph &g, Budget budget)
{
    require_rcks(g);
    std::vector<StateId> roots{g.initial()};
    std::vector<char> seen(g.num_states(), 0);
    seen[g.initial()] = 1;
    int gap = 0;
    for (std::size_t k = 0; k < roots.size(); k++) {
        Scan s = scan_unfolding(g, roots[k], budget);
        gap = std::max(gap, s.ambiguous);
        for (StateId u : s.leaf_states) {
            if (!seen[u]) {
                seen[u] = 1;
                roots.push_back(u);
            }
        }
    }
    return gap;
}

std::vector<OutcomeSet>
achievable_outcomes(const GameGraph &g, StateId v, Budget budget)
{
    return build_tree(g, v, budget).outcomes();
}

}
