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

#include "kgap/parity.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <stdexcept>

#include "kgap/error.hpp"

namespace kgap {

int
ParityGame::add(Owner o, int prio, std::string label)
{
    owner.push_back(o);
    priority.push_back(prio);
    successors.emplace_back();
    labels.push_back(std::move(label));
    return size() - 1;
}

void
check_parity_game(const ParityGame &pg)
{
    const int n = pg.size();
    if (pg.priority.size() != static_cast<std::size_t>(n) || pg.successors.size() != static_cast<std::size_t>(n)) {
        throw InputError("parity game arrays disagree in size");
    }
    if (n == 0 || pg.initial < 0 || pg.initial >= n) throw InputError("parity game has no valid initial position");
    for (int v = 0; v < n; v++) {
        if (pg.priority[v] < 0) throw InputError("negative priority");
        if (pg.successors[v].empty()) throw InputError("position " + std::to_string(v) + " has no successor");
        for (int w : pg.successors[v]) {
            if (w < 0 || w >= n) throw InputError("position " + std::to_string(v) + " has a dangling successor");
        }
    }
}

namespace {

class Zielonka
{
public:
    explicit Zielonka(const ParityGame &pg) : pg_(pg), n_(pg.size()), prio_(normalize(pg.priority)), pred_(n_)
    {
        for (int v = 0; v < n_; v++) {
            for (int w : pg.successors[v]) pred_[w].push_back(v);
        }
        for (auto &p : pred_) {
            std::sort(p.begin(), p.end());
            p.erase(std::unique(p.begin(), p.end()), p.end());
        }
    }

    ParitySolution run()
    {
        std::vector<char> all(n_, 1);
        ParitySolution sol;
        sol.winner.assign(n_, -1);
        sol.strategy.assign(n_, -1);
        solve(all, sol);
        return sol;
    }

private:
    /** Dense priorities with parity preserved: runs of equal parity collapse. */
    static std::vector<int> normalize(const std::vector<int> &prio)
    {
        std::vector<int> values = prio;
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        std::map<int, int> to;
        int next = values.empty() ? 0 : values.front() % 2;
        for (std::size_t k = 0; k < values.size(); k++) {
            if (k > 0 && values[k] % 2 != values[k - 1] % 2) next++;
            to[values[k]] = next;
        }
        std::vector<int> res;
        for (int p : prio) res.push_back(to[p]);
        return res;
    }

    /** Attractor of `target` for `player` inside `sub`; fills strategy for attracted positions of `player`. */
    std::vector<char> attractor(const std::vector<char> &sub, const std::vector<char> &target, int player, std::vector<int> &strategy)
    {
        std::vector<char> attr = target;
        std::vector<int> count(n_, 0);
        for (int v = 0; v < n_; v++) {
            if (!sub[v]) continue;
            for (int w : pg_.successors[v]) {
                if (sub[w]) count[v]++;
            }
        }
        std::deque<int> queue;
        for (int v = 0; v < n_; v++) {
            if (attr[v]) queue.push_back(v);
        }
        while (!queue.empty()) {
            int w = queue.front();
            queue.pop_front();
            for (int v : pred_[w]) {
                if (!sub[v] || attr[v]) continue;
                if (static_cast<int>(pg_.owner[v]) == player) {
                    int best = -1;
                    for (int s : pg_.successors[v]) {
                        if (sub[s] && attr[s] && (best < 0 || s < best)) best = s;
                    }
                    strategy[v] = best;
                    attr[v] = 1;
                    queue.push_back(v);
                } else {
                    int left = 0;
                    for (int s : pg_.successors[v]) {
                        if (sub[s] && !attr[s]) left++;
                    }
                    if (left == 0) {
                        attr[v] = 1;
                        queue.push_back(v);
                    }
                }
            }
        }
        return attr;
    }

    void solve(const std::vector<char> &sub, ParitySolution &sol)
    {
        int p = -1;
        for (int v = 0; v < n_; v++) {
            if (sub[v] && (p < 0 || prio_[v] < p)) p = prio_[v];
        }
        if (p < 0) return;
        const int alpha = p % 2;

        std::vector<char> top(n_, 0);
        for (int v = 0; v < n_; v++) top[v] = sub[v] && prio_[v] == p;
        std::vector<int> attr_strategy(n_, -1);
        auto A = attractor(sub, top, alpha, attr_strategy);

        std::vector<char> rest(n_, 0);
        for (int v = 0; v < n_; v++) rest[v] = sub[v] && !A[v];
        ParitySolution inner;
        inner.winner.assign(n_, -1);
        inner.strategy.assign(n_, -1);
        solve(rest, inner);

        bool opponent_empty = true;
        for (int v = 0; v < n_; v++) {
            if (rest[v] && inner.winner[v] == 1 - alpha) opponent_empty = false;
        }
        if (opponent_empty) {
            for (int v = 0; v < n_; v++) {
                if (!sub[v]) continue;
                sol.winner[v] = alpha;
                if (static_cast<int>(pg_.owner[v]) != alpha) {
                    sol.strategy[v] = -1;
                } else if (rest[v]) {
                    sol.strategy[v] = inner.strategy[v];
                } else if (top[v]) {
                    int best = -1;
                    for (int s : pg_.successors[v]) {
                        if (sub[s] && (best < 0 || s < best)) best = s;
                    }
                    sol.strategy[v] = best;
                } else {
                    sol.strategy[v] = attr_strategy[v];
                }
            }
            return;
        }

        std::vector<char> lost(n_, 0);
        for (int v = 0; v < n_; v++) lost[v] = rest[v] && inner.winner[v] == 1 - alpha;
        std::vector<int> b_strategy(n_, -1);
        auto B = attractor(sub, lost, 1 - alpha, b_strategy);
        std::vector<char> remain(n_, 0);
        for (int v = 0; v < n_; v++) remain[v] = sub[v] && !B[v];
        solve(remain, sol);
        for (int v = 0; v < n_; v++) {
            if (!B[v]) continue;
            sol.winner[v] = 1 - alpha;
            if (static_cast<int>(pg_.owner[v]) != 1 - alpha) {
                sol.strategy[v] = -1;
            } else if (lost[v]) {
                sol.strategy[v] = inner.strategy[v];
            } else {
                sol.strategy[v] = b_strategy[v];
            }
        }
    }

    const ParityGame &pg_;
    int n_;
    std::vector<int> prio_;
    std::vector<std::vector<int>> pred_;
};

}

bool
strategy_wins(const ParityGame &pg, int player, const std::vector<int> &region, const std::vector<int> &strategy)
{
    const int n = pg.size();
    std::vector<std::vector<int>> edges(n);
    for (int v = 0; v < n; v++) {
        if (!region[v]) continue;
        if (static_cast<int>(pg.owner[v]) == player) {
            int s = strategy[v];
            if (s < 0 || s >= n || !region[s]) return false;
            if (std::find(pg.successors[v].begin(), pg.successors[v].end(), s) == pg.successors[v].end()) return false;
            edges[v].push_back(s);
        } else {
            for (int w : pg.successors[v]) {
                if (!region[w]) return false;
                edges[v].push_back(w);
            }
        }
    }
    // A losing cycle exists iff for some priority q of the wrong parity, the
    // positions of priority >= q contain a cycle through a position of priority q.
    std::vector<int> values;
    for (int v = 0; v < n; v++) {
        if (region[v] && pg.priority[v] % 2 != player) values.push_back(pg.priority[v]);
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (int q : values) {
        std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
        std::vector<char> on(n, 0);
        std::vector<int> st;
        int counter = 0, nc = 0;
        auto keep = [&](int v) { return region[v] && pg.priority[v] >= q; };
        std::function<void(int)> dfs = [&](int v) {
            index[v] = low[v] = counter++;
            st.push_back(v);
            on[v] = 1;
            for (int w : edges[v]) {
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
        for (int v = 0; v < n; v++) {
            if (keep(v) && index[v] < 0) dfs(v);
        }
        for (int v = 0; v < n; v++) {
            if (!keep(v) || pg.priority[v] != q) continue;
            for (int w : edges[v]) {
                if (keep(w) && comp[w] == comp[v]) return false;
            }
        }
    }
    return true;
}

ParitySolution
solve(const ParityGame &pg)
{
    check_parity_game(pg);
    ParitySolution sol = Zielonka(pg).run();
    for (int player = 0; player < 2; player++) {
        std::vector<int> region(pg.size());
        for (int v = 0; v < pg.size(); v++) region[v] = sol.winner[v] == player;
        if (!strategy_wins(pg, player, region, sol.strategy)) throw std::logic_error("parity solver produced an unsound strategy");
    }
    return sol;
}

}
