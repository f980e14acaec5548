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

#ifndef KGAP_UNRAVEL_HPP
#define KGAP_UNRAVEL_HPP

#include <compare>
#include <iosfwd>
#include <map>
#include <memory>
#include <unordered_map>
#include <vector>

#include "kgap/epistemic.hpp"
#include "kgap/error.hpp"
#include "kgap/game.hpp"

namespace kgap {

/** A commonly known state reached at the end of a gap, with the least priority seen during the gap. */
struct Outcome
{
    StateId state;
    int priority;

    bool operator==(const Outcome &) const = default;
    auto operator<=>(const Outcome &) const = default;
};

/** Sorted, duplicate-free, nonempty. */
using OutcomeSet = std::vector<Outcome>;

[[nodiscard]] OutcomeSet merge_outcomes(const OutcomeSet &a, const OutcomeSet &b);

/**
 * T_v as a tree of epistemic components: the unravelling of the game from a
 * commonly known state v up to the first round at which the state becomes
 * common knowledge again. Children of a node are the components obtained by
 * prolonging it under one admissible action assignment, that is, one that
 * gives every history of a ∼^i class the same action of player i.
 *
 * Nodes holding the same set of histories are shared, so the structure is a
 * DAG whose unfolding is the tree.
 */
class ComponentTree
{
public:
    struct Branch
    {
        /** Profile played at each history of the node, aligned with Node::histories. */
        std::vector<ProfileId> assignment;
        std::vector<int> children;
    };

    struct Witness
    {
        int branch;
        /** Index into each child's family. */
        std::vector<int> choice;
    };

    struct Node
    {
        int depth = 0;
        int parent = -1;
        bool leaf = false;
        int gap_min = 0;
        /** Nodes of arena(), sorted. */
        std::vector<int> histories;
        std::vector<Branch> branches;
        std::vector<OutcomeSet> family;
        std::vector<Witness> witnesses;
    };

    [[nodiscard]] StateId root() const { return root_; }
    [[nodiscard]] const GameGraph &game() const { return *g_; }
    /** Every history of T_v, with projection classes. */
    [[nodiscard]] const HistoryArena &arena() const { return *arena_; }
    [[nodiscard]] const std::vector<Node> &nodes() const { return nodes_; }
    [[nodiscard]] const Node &node(int k) const { return nodes_[k]; }
    [[nodiscard]] const std::vector<OutcomeSet> &outcomes() const { return nodes_[0].family; }

    /** Whether an arena history attains common knowledge for the first time, i.e. ends a gap. */
    [[nodiscard]] bool is_leaf_history(int x) const { return leaf_history_[x] != 0; }
    /** Depth of the deepest history lacking common knowledge. */
    [[nodiscard]] int ambiguous_depth() const { return ambiguous_depth_; }
    /** States at which leaves attain common knowledge. */
    [[nodiscard]] const std::vector<StateId> &leaf_states() const { return leaf_states_; }

    /** Arena node → profile along one joint strategy realizing outcomes()[k]; only histories following it appear. */
    [[nodiscard]] std::unordered_map<int, ProfileId> witness_strategy(std::size_t k) const;

    void dump(std::ostream &out) const;

private:
    friend ComponentTree build_tree(const GameGraph &g, StateId v, Budget budget);

    const GameGraph *g_ = nullptr;
    StateId root_ = 0;
    std::unique_ptr<HistoryArena> arena_;
    std::vector<char> leaf_history_;
    int ambiguous_depth_ = 0;
    std::vector<StateId> leaf_states_;
    std::vector<Node> nodes_;
};

/** Throws NotRcksError when the game does not allow recurring common knowledge. */
[[nodiscard]] ComponentTree build_tree(const GameGraph &g, StateId v, Budget budget = {});
ComponentTree build_tree(GameGraph &&, StateId, Budget = {}) = delete;

/** Builds and caches T_v for the initial state and every state reachable as a point of common knowledge. */
class Unraveller
{
public:
    explicit Unraveller(const GameGraph &g, Budget budget = {});
    Unraveller(GameGraph &&, Budget = {}) = delete;

    [[nodiscard]] const GameGraph &game() const { return *g_; }
    const ComponentTree &tree(StateId v);
    /** The initial state followed by the other roots in discovery order. */
    const std::vector<StateId> &roots();
    int gap_size();

private:
    const GameGraph *g_;
    Budget budget_;
    std::map<StateId, ComponentTree> trees_;
    std::vector<StateId> roots_;
    bool roots_done_ = false;
};

[[nodiscard]] int gap_size(const GameGraph &g, Budget budget = {});
[[nodiscard]] std::vector<OutcomeSet> achievable_outcomes(const GameGraph &g, StateId v, Budget budget = {});

}

#endif
