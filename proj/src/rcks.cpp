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

#include "kgap/rcks.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace kgap {

ForkAutomaton
build_fork_automaton(const GameGraph &g)
{
    ForkAutomaton fa;
    const int m = g.num_states();
    const int n = g.num_players();
    fa.m = m;
    fa.initial = fa.pair(g.initial(), g.initial());
    fa.transitions.resize(static_cast<std::size_t>(m) * m);

    for (StateId u = 0; u < m; u++) {
        for (StateId u2 = 0; u2 < m; u2++) {
            // reach[i][b] = states v' reachable from u or u2 by a profile whose i-th action is b
            std::vector<std::vector<std::vector<char>>> reach(n);
            for (int i = 0; i < n; i++) {
                reach[i].assign(g.num_actions(i), std::vector<char>(m, 0));
                for (ProfileId a = 0; a < g.num_profiles(); a++) {
                    auto &row = reach[i][g.action_of(a, i)];
                    for (StateId w : g.successors(u, a)) row[w] = 1;
                    for (StateId w : g.successors(u2, a)) row[w] = 1;
                }
            }
            auto &out = fa.transitions[fa.pair(u, u2)];
            for (ProfileId a = 0; a < g.num_profiles(); a++) {
                for (StateId v : g.successors(u, a)) {
                    for (StateId v2 = 0; v2 < m; v2++) {
                        for (int i = 0; i < n; i++) {
                            if (g.observation(i, v2) == g.observation(i, v) && reach[i][g.action_of(a, i)][v2]) {
                                out.push_back({a, v, fa.pair(v, v2)});
                                break;
                            }
                        }
                    }
                }
            }
        }
    }
    return fa;
}

History
ForkLasso::play(const ForkAutomaton &a) const
{
    return unrolled(a, 1);
}

History
ForkLasso::unrolled(const ForkAutomaton &a, std::size_t times) const
{
    History h{a.first(runs.front()), {}};
    for (std::size_t k = 0; k < loop_start; k++) h.steps.push_back(letters[k]);
    for (std::size_t t = 0; t < times; t++) {
        for (std::size_t k = loop_start; k < letters.size(); k++) h.steps.push_back(letters[k]);
    }
    return h;
}

RcksVerdict
check_rcks(const GameGraph &g)
{
    return check_rcks(g, build_fork_automaton(g));
}

RcksVerdict
check_rcks(const GameGraph &, const ForkAutomaton &fa)
{
    const int N = fa.num_states();
    std::vector<char> reach(N, 0);
    std::vector<int> stack{fa.initial};
    reach[fa.initial] = 1;
    while (!stack.empty()) {
        int q = stack.back();
        stack.pop_back();
        for (const auto &t : fa.transitions[q]) {
            if (!reach[t.target]) {
                reach[t.target] = 1;
                stack.push_back(t.target);
            }
        }
    }
    auto inside = [&](int q) { return reach[q] && fa.is_final(q); };

    // Tarjan on the reachable final-induced subgraph, roots in id order.
    std::vector<int> index(N, -1), low(N, 0), comp(N, -1);
    std::vector<char> on_stack(N, 0);
    std::vector<int> tstack;
    int counter = 0, ncomp = 0;
    std::function<void(int)> strong = [&](int q) {
        index[q] = low[q] = counter++;
        tstack.push_back(q);
        on_stack[q] = 1;
        for (const auto &t : fa.transitions[q]) {
            int r = t.target;
            if (!inside(r)) continue;
            if (index[r] < 0) {
                strong(r);
                low[q] = std::min(low[q], low[r]);
            } else if (on_stack[r]) {
                low[q] = std::min(low[q], index[r]);
            }
        }
        if (low[q] == index[q]) {
            int r;
            do {
                r = tstack.back();
                tstack.pop_back();
                on_stack[r] = 0;
                comp[r] = ncomp;
            } while (r != q);
            ncomp++;
        }
    };
    for (int q = 0; q < N; q++) {
        if (inside(q) && index[q] < 0) strong(q);
    }
    std::vector<char> cyclic(ncomp, 0);
    for (int q = 0; q < N; q++) {
        if (!inside(q)) continue;
        for (const auto &t : fa.transitions[q]) {
            if (inside(t.target) && comp[t.target] == comp[q]) cyclic[comp[q]] = 1;
        }
    }

    // Shortest stem to the first cyclic final state met in BFS order.
    std::vector<int> pred(N, -1);
    std::vector<const ForkAutomaton::Transition *> via(N, nullptr);
    std::vector<char> seen(N, 0);
    std::deque<int> queue{fa.initial};
    seen[fa.initial] = 1;
    int hit = -1;
    while (!queue.empty() && hit < 0) {
        int q = queue.front();
        queue.pop_front();
        if (inside(q) && cyclic[comp[q]]) {
            hit = q;
            break;
        }
        for (const auto &t : fa.transitions[q]) {
            if (!seen[t.target]) {
                seen[t.target] = 1;
                pred[t.target] = q;
                via[t.target] = &t;
                queue.push_back(t.target);
            }
        }
    }
    RcksVerdict verdict;
    if (hit < 0) return verdict;
    verdict.allows_rcks = false;

    ForkLasso lasso;
    std::vector<int> stem_rev;
    std::vector<Step> stem_letters_rev;
    for (int q = hit; q != fa.initial; q = pred[q]) {
        stem_rev.push_back(q);
        stem_letters_rev.push_back({via[q]->profile, via[q]->state});
    }
    lasso.runs.push_back(fa.initial);
    lasso.runs.insert(lasso.runs.end(), stem_rev.rbegin(), stem_rev.rend());
    lasso.letters.assign(stem_letters_rev.rbegin(), stem_letters_rev.rend());
    lasso.loop_start = lasso.letters.size();

    // Shortest cycle through hit inside its component.
    std::vector<int> cpred(N, -1);
    std::vector<const ForkAutomaton::Transition *> cvia(N, nullptr);
    std::vector<char> cseen(N, 0);
    std::deque<int> cq{hit};
    bool closed = false;
    const ForkAutomaton::Transition *closing = nullptr;
    int closing_from = -1;
    while (!cq.empty() && !closed) {
        int q = cq.front();
        cq.pop_front();
        for (const auto &t : fa.transitions[q]) {
            if (!inside(t.target) || comp[t.target] != comp[hit]) continue;
            if (t.target == hit) {
                closed = true;
                closing = &t;
                closing_from = q;
                break;
            }
            if (!cseen[t.target]) {
                cseen[t.target] = 1;
                cpred[t.target] = q;
                cvia[t.target] = &t;
                cq.push_back(t.target);
            }
        }
    }
    std::vector<int> loop_rev{hit};
    std::vector<Step> loop_letters_rev{{closing->profile, closing->state}};
    for (int q = closing_from; q != hit; q = cpred[q]) {
        loop_rev.push_back(q);
        loop_letters_rev.push_back({cvia[q]->profile, cvia[q]->state});
    }
    lasso.runs.insert(lasso.runs.end(), loop_rev.rbegin(), loop_rev.rend());
    lasso.letters.insert(lasso.letters.end(), loop_letters_rev.rbegin(), loop_letters_rev.rend());
    verdict.counterexample = std::move(lasso);
    return verdict;
}

}
