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

#ifndef KGAP_EPISTEMIC_HPP
#define KGAP_EPISTEMIC_HPP

#include <climits>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "kgap/error.hpp"
#include "kgap/game.hpp"

namespace kgap {

/**
 * Histories from a fixed root, stored as a trie. Every node carries, for each
 * player, the id of its observation projection: two nodes of the arena are
 * indistinguishable for player i iff their class ids for i coincide.
 */
class HistoryArena
{
public:
    HistoryArena(const GameGraph &g, StateId root);

    [[nodiscard]] const GameGraph &game() const { return *g_; }
    [[nodiscard]] std::size_t size() const { return nodes_.size(); }
    [[nodiscard]] StateId state(int x) const { return nodes_[x].state; }
    [[nodiscard]] int parent(int x) const { return nodes_[x].parent; }
    [[nodiscard]] ProfileId profile(int x) const { return nodes_[x].profile; }
    [[nodiscard]] int depth(int x) const { return nodes_[x].depth; }
    /** Least priority strictly after the root; INT_MAX at the root. */
    [[nodiscard]] int gap_min(int x) const { return nodes_[x].gap_min; }
    [[nodiscard]] int cls(int x, int i) const { return cls_[static_cast<std::size_t>(x) * n_ + i]; }
    [[nodiscard]] int num_classes(int i) const { return next_class_[i]; }

    /** Creates every one-round prolongation of x, ordered by (profile, state). Idempotent. */
    std::span<const int> expand(int x);
    [[nodiscard]] bool expanded(int x) const { return nodes_[x].first_child >= 0; }
    [[nodiscard]] std::span<const int> children(int x) const;
    /** The prolongation of an expanded node by (a, w), if it is a move. */
    [[nodiscard]] std::optional<int> child(int x, ProfileId a, StateId w) const;

    /** The class reached from class c of player i by own action a and observation b, if any history has it. */
    [[nodiscard]] std::optional<int> next_class(int i, int c, int a, int b) const;

    [[nodiscard]] History history(int x) const;
    /** The node spelling h, creating nodes along the way. h must start at the root. */
    int locate(const History &h);

private:
    struct Node
    {
        int parent;
        ProfileId profile;
        StateId state;
        int depth;
        int gap_min;
        int first_child = -1;
        int num_children = 0;
    };

    int add(int parent, ProfileId a, StateId w);
    int intern(int i, int parent_cls, int a, int b);

    const GameGraph *g_;
    std::size_t n_;
    std::vector<Node> nodes_;
    std::vector<int> cls_;
    std::vector<int> child_ids_;
    std::vector<std::unordered_map<std::uint64_t, int>> class_index_;
    std::vector<int> next_class_;
};

/** Partition of `nodes` into ∼-connected pieces, in order of first member. */
[[nodiscard]] std::vector<std::vector<int>> split_components(const HistoryArena &arena, std::span<const int> nodes);

/** One connected piece of the epistemic model at a fixed round. */
struct EpistemicComponent
{
    int round = 0;
    std::vector<int> histories;
    std::vector<StateId> end_states;
    bool common_knowledge = false;
    int parent = -1;
    int gap_min = INT_MAX;
};

struct ComponentLayer
{
    int round = 0;
    std::vector<EpistemicComponent> components;
};

/**
 * Epistemic unfolding from a commonly known root. Each advance() prolongs the
 * histories of the current layer by every move and splits the result into
 * components. In UntilCommonKnowledge mode, components that attained common
 * knowledge are not prolonged further.
 */
class ComponentTracker
{
public:
    enum class Mode { All, UntilCommonKnowledge };

    ComponentTracker(const GameGraph &g, StateId root, Mode mode = Mode::All, Budget budget = {});

    [[nodiscard]] const ComponentLayer &layer() const { return layer_; }
    /** True when no component of the current layer is left to prolong. */
    [[nodiscard]] bool done() const;
    const ComponentLayer &advance();

    [[nodiscard]] const HistoryArena &arena() const { return arena_; }
    [[nodiscard]] HistoryArena &arena() { return arena_; }

private:
    HistoryArena arena_;
    Mode mode_;
    BudgetMeter meter_;
    ComponentLayer layer_;
};

/** Layers 0..depth of the unfolding from root. */
[[nodiscard]] std::vector<ComponentLayer> track_components(const GameGraph &g, int depth, StateId root, Budget budget = {});

/** P^i(h): histories from h.start of the same length with the same i-projection, in lexicographic order. */
[[nodiscard]] std::vector<History> possibility_set(const GameGraph &g, const History &h, int i, Budget budget = {});

/** End states each player considers possible at h (subset construction). */
[[nodiscard]] std::vector<std::vector<StateId>> knowledge_sets(const GameGraph &g, const History &h);

[[nodiscard]] bool mk_state_at(const GameGraph &g, const History &h);
[[nodiscard]] bool mk_order_at(const GameGraph &g, const History &h, int k, Budget budget = {});
[[nodiscard]] bool ck_state_at(const GameGraph &g, const History &h, Budget budget = {});

/**
 * Largest k such that mk_order_at(h, k) holds (0 when mutual knowledge
 * fails), or nullopt when the state is common knowledge.
 */
[[nodiscard]] std::optional<int> knowledge_order(const GameGraph &g, const History &h, Budget budget = {});

}

#endif
