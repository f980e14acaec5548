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

#include "kgap/generators.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <set>

#include "kgap/error.hpp"
#include "json_util.hpp"

namespace kgap {

GameGraph
gen_gm(int m)
{
    if (m < 2) throw InputError("G_m needs m >= 2");
    GameGraph::Builder b;
    b.player("1", {"go"});
    auto white = [&](const std::string &s) { b.state(s, {"white"}, 2); };
    auto black = [&](const std::string &s) { b.state(s, {"black"}, 0); };
    auto edge = [&](const std::string &u, const std::string &v) { b.move(u, {"go"}, v); };
    auto c = [](int j) { return "c" + std::to_string(j); };
    auto p = [](int j) { return "p" + std::to_string(j); };
    auto q = [](int j) { return "q" + std::to_string(j); };

    white("init");
    for (int j = 1; j < m; j++) white(c(j));
    black("z");
    for (int j = 1; j <= m; j++) {
        white(p(j));
        if (j < m) black(q(j));
    }
    b.initial("init");
    edge("init", c(1));
    edge("init", p(1));
    for (int j = 1; j < m - 1; j++) edge(c(j), c(j + 1));
    edge(c(m - 1), "z");
    edge("z", c(1));
    for (int j = 1; j <= m; j++) {
        edge(p(j), p(j));
        if (j < m) {
            edge(p(j), q(j));
            edge(q(j), p(j + 1));
        }
    }
    edge(p(m), "z");
    return b.build();
}

namespace {

/** Shared scaffolding of the two-player in/out examples. */
class Figure
{
public:
    explicit Figure(Objective obj) : obj_(obj)
    {
        b_.player("1", {"in", "out"});
        b_.player("2", {"in", "out"});
    }

    void state(const std::string &name, const std::string &o1, const std::string &o2)
    {
        b_.state(name, {o1, o2}, obj_ == Objective::AvoidUnsafe ? 0 : 1);
        names_.push_back(name);
    }
    void in(const std::string &u, const std::string &v) { b_.move(u, {"in", "in"}, v); }
    void out(const std::string &u, const std::string &v) { b_.move(u, {"out", "out"}, v); }

    GameGraph finish()
    {
        state("dots", "dots", "dots");
        in("dots", "dots");
        out("dots", "dots");
        b_.state("safe", {"safe", "safe"}, 0);
        b_.state("unsafe", {"unsafe", "unsafe"}, 1);
        b_.fill("safe", "safe");
        b_.fill("unsafe", "unsafe");
        for (const auto &s : names_) b_.fill(s, "unsafe");
        b_.initial("root");
        return b_.build();
    }

private:
    Objective obj_;
    GameGraph::Builder b_;
    std::vector<std::string> names_;
};

History
path(const GameGraph &g, const std::vector<std::string> &states)
{
    History h{*g.find_state(states.front()), {}};
    ProfileId in = g.profile_of(std::vector<int>{0, 0});
    for (std::size_t k = 1; k < states.size(); k++) h.append(in, *g.find_state(states[k]));
    check_history(g, h);
    return h;
}

}

FigureGame
gen_figure(std::string_view id, int n, Objective objective)
{
    const std::string bl = "bullet", ci = "circle", cr = "cross";
    Figure f(objective);
    std::vector<std::string> marked;
    if (id == "1a") {
        f.state("root", bl, bl);
        f.state("A", ci, ci);
        f.state("B", ci, bl);
        f.state("AA", cr, cr);
        f.state("BA", cr, cr);
        f.in("root", "A");
        f.in("root", "B");
        f.in("A", "AA");
        f.in("B", "BA");
        f.in("AA", "dots");
        f.in("BA", "dots");
        f.out("BA", "safe");
        marked = {"root", "B", "BA"};
    } else if (id == "1b") {
        f.state("root", bl, bl);
        f.state("A", ci, ci);
        f.state("B", ci, bl);
        f.state("C", bl, bl);
        f.state("AA", cr, cr);
        f.state("BB", cr, cr);
        f.in("root", "A");
        f.in("root", "B");
        f.in("root", "C");
        f.in("A", "AA");
        f.in("B", "BB");
        f.in("C", "BB");
        f.in("AA", "dots");
        f.in("BB", "dots");
        f.out("BB", "safe");
        marked = {"root", "C", "BB"};
    } else if (id == "2a") {
        f.state("root", bl, bl);
        f.state("A00", ci, ci);
        f.state("A01", ci, bl);
        f.state("A11", bl, bl);
        f.state("A12", bl, bl);
        f.state("B00", ci, ci);
        f.state("B01", ci, ci);
        f.state("B11", ci, ci);
        f.state("B12", ci, bl);
        f.state("AA", cr, cr);
        f.state("BB", cr, cr);
        for (const char *s : {"A00", "A01", "A11", "A12"}) f.in("root", s);
        f.in("A00", "B00");
        f.in("A01", "B01");
        f.in("A11", "B11");
        f.in("A12", "B12");
        f.in("B00", "AA");
        f.in("B01", "BB");
        f.in("B11", "BB");
        f.in("B12", "BB");
        f.in("AA", "dots");
        f.in("BB", "dots");
        f.out("BB", "safe");
        marked = {"root", "A12", "B12", "BB"};
    } else if (id == "2b") {
        if (n < 1) throw InputError("example 2b needs n >= 1");
        f.state("root", bl, bl);
        f.state("A00", ci, ci);
        f.state("A01", ci, bl);
        f.state("A11", bl, bl);
        f.state("B1", ci, ci);
        f.state("AA", cr, cr);
        f.state("BB", cr, cr);
        f.in("root", "A00");
        f.in("root", "A01");
        f.in("root", "A11");
        f.in("A00", "A00");
        f.in("A00", "AA");
        f.in("A01", "B1");
        f.in("A11", "A11");
        f.in("A11", "A01");
        f.in("A11", "B1");
        f.in("B1", "B1");
        f.in("B1", "BB");
        f.in("AA", "dots");
        f.in("BB", "dots");
        f.out("BB", "safe");
        marked = {"root"};
        for (int k = 0; k <= n; k++) marked.push_back("A11");
        marked.push_back("B1");
        marked.push_back("BB");
    } else {
        throw InputError("unknown example '" + std::string(id) + "'");
    }
    GameGraph g = f.finish();
    History h = path(g, marked);
    return {std::move(g), std::move(h)};
}

GameGraph
gen_consensus_ckgame(const GameGraph &g, const History &pi)
{
    for (int i = 0; i < g.num_players(); i++) {
        if (g.num_actions(i) != 1) throw InputError("consensus construction needs a single-action game");
    }
    check_history(g, pi);
    const int n = g.num_players();
    GameGraph::Builder b;
    for (int i = 0; i < n; i++) b.player(g.player_name(i), {"in", "out"});
    const std::vector<std::string> all_in(n, "in"), all_out(n, "out");
    auto copy = [&](StateId v) { return "g:" + g.state_name(v); };
    auto hat = [](std::size_t k) { return "pi:" + std::to_string(k); };
    auto obs = [&](StateId v) {
        std::vector<std::string> o;
        for (int i = 0; i < n; i++) o.push_back(g.observation_name(i, g.observation(i, v)));
        return o;
    };

    for (StateId v = 0; v < g.num_states(); v++) b.state(copy(v), obs(v), 0);
    for (std::size_t k = 0; k <= pi.length(); k++) b.state(hat(k), obs(pi.state_at(k)), 0);
    b.state("safe", std::vector<std::string>(n, "sink:safe"), 0);
    b.state("unsafe", std::vector<std::string>(n, "sink:unsafe"), 1);
    b.initial(hat(0));

    for (StateId v = 0; v < g.num_states(); v++) {
        for (StateId w : g.successors(v, 0)) b.move(copy(v), all_in, copy(w));
    }
    b.move(copy(pi.last()), all_out, "safe");
    for (std::size_t k = 0; k < pi.length(); k++) b.move(hat(k), all_in, hat(k + 1));
    if (pi.length() > 0) {
        for (StateId w : g.successors(pi.start, 0)) b.move(hat(0), all_in, copy(w));
    }
    b.move(hat(pi.length()), all_out, "safe");

    for (StateId v = 0; v < g.num_states(); v++) b.fill(copy(v), "unsafe");
    for (std::size_t k = 0; k <= pi.length(); k++) b.fill(hat(k), "unsafe");
    b.fill("safe", "safe");
    b.fill("unsafe", "unsafe");
    return b.build();
}

void
check_domino_system(const DominoSystem &d)
{
    auto bad = [](const std::string &why) { throw InputError("malformed domino system: " + why); };
    std::set<std::string> ds(d.dominoes.begin(), d.dominoes.end());
    if (ds.size() != d.dominoes.size()) bad("duplicate domino");
    if (!ds.count(d.border) || !ds.count(d.bottom)) bad("border and bottom dominoes must be listed");
    if (d.border == d.bottom) bad("border and bottom dominoes must differ");
    std::set<std::pair<std::string, std::string>> h(d.horizontal.begin(), d.horizontal.end());
    for (const auto &[x, y] : h) {
        if (!ds.count(x) || !ds.count(y)) bad("horizontal pair uses an unknown domino");
        if ((x == d.bottom && y != d.bottom && y != d.border) || (y == d.bottom && x != d.bottom && x != d.border)) {
            bad("the bottom domino may only sit next to itself or the border");
        }
    }
    if (h.count({d.border, d.border})) bad("(border, border) must not be horizontally compatible");
    for (const auto &need : {std::make_pair(d.border, d.bottom), std::make_pair(d.bottom, d.bottom), std::make_pair(d.bottom, d.border)}) {
        if (!h.count(need)) bad("the bottom row must be horizontally consistent");
    }
    bool border_column = false;
    for (const auto &[x, y] : d.vertical) {
        if (!ds.count(x) || !ds.count(y)) bad("vertical pair uses an unknown domino");
        if (x == d.border && y == d.border) {
            border_column = true;
            continue;
        }
        if (x == d.border || y == d.border || y == d.bottom) bad("vertical pairs must lie in D x (D \\ {border, bottom}) or be (border, border)");
    }
    if (!border_column) bad("(border, border) must be vertically compatible");
}

DominoSystem
read_domino_system(std::istream &in)
{
    auto doc = detail::parse_json(in);
    detail::require_object(doc, "domino system", {"dominoes", "border", "bottom", "horizontal", "vertical"});
    DominoSystem d;
    d.dominoes = detail::as_strings(detail::get_field(doc, "dominoes"), "dominoes");
    d.border = detail::get_string(doc, "border");
    d.bottom = detail::get_string(doc, "bottom");
    auto pairs = [&](const char *key) {
        std::vector<std::pair<std::string, std::string>> res;
        for (const auto &p : detail::get_array(doc, key)) {
            auto v = detail::as_strings(p, key);
            if (v.size() != 2) throw InputError(std::string(key) + " entries must be pairs");
            res.emplace_back(v[0], v[1]);
        }
        return res;
    };
    d.horizontal = pairs("horizontal");
    d.vertical = pairs("vertical");
    check_domino_system(d);
    return d;
}

DominoSystem
load_domino_system(const std::string &path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    return read_domino_system(in);
}

CorridorGame::CorridorGame(DominoSystem d) : d_(std::move(d))
{
    check_domino_system(d_);
    std::set<std::pair<std::string, std::string>> h(d_.horizontal.begin(), d_.horizontal.end());
    std::vector<std::string> inner;
    for (const auto &x : d_.dominoes) {
        if (x != d_.border) inner.push_back(x);
    }
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto &p : d_.vertical) {
        if (p.first != d_.border && std::find(pairs.begin(), pairs.end(), p) == pairs.end()) pairs.push_back(p);
    }
    auto single = [](const std::string &x) { return "s:" + x; };
    auto pair = [](const std::pair<std::string, std::string> &p) { return "p:" + p.first + "/" + p.second; };
    const std::string &B = d_.border;

    GameGraph::Builder b;
    b.player("1", {"go"});
    b.player("2", {"go"});
    b.state("v0", {B, B}, 0);
    for (const auto &x : inner) b.state(single(x), {x, x}, 0);
    for (const auto &p : pairs) b.state(pair(p), {p.first, p.second}, 0);
    b.state("safe", {B, B}, 0);
    b.state("unsafe", {B, B}, 0);
    b.initial("v0");

    std::map<std::string, int> out_degree;
    auto edge = [&](const std::string &u, const std::string &v) {
        b.move(u, {"go", "go"}, v);
        out_degree[u]++;
    };
    for (const auto &x : inner) {
        if (h.count({B, x})) edge("v0", single(x));
        for (const auto &y : inner) {
            if (h.count({x, y})) edge(single(x), single(y));
        }
        if (h.count({x, B})) edge(single(x), "safe");
    }
    edge(single(d_.bottom), "unsafe");
    for (const auto &p : pairs) {
        if (h.count({B, p.first}) && h.count({B, p.second})) edge("v0", pair(p));
        for (const auto &q : pairs) {
            if (h.count({p.first, q.first}) && h.count({p.second, q.second})) edge(pair(p), pair(q));
        }
        if (h.count({p.first, B}) && h.count({p.second, B})) edge(pair(p), "safe");
    }
    edge("safe", "safe");
    edge("unsafe", "unsafe");

    std::vector<std::string> dead_ends;
    for (const auto &x : inner) {
        if (!out_degree.count(single(x))) dead_ends.push_back(single(x));
    }
    for (const auto &p : pairs) {
        if (!out_degree.count(pair(p))) dead_ends.push_back(pair(p));
    }
    if (!out_degree.count("v0")) dead_ends.push_back("v0");
    if (!dead_ends.empty()) {
        b.state("dead", {"dead", "dead"}, 0);
        b.move("dead", {"go", "go"}, "dead");
        for (const auto &s : dead_ends) b.move(s, {"go", "go"}, "dead");
    }
    game_ = b.build();
}

History
CorridorGame::history(const std::vector<std::string> &w) const
{
    if (w.empty()) throw InputError("frontier must be nonempty");
    History h{*game_.find_state("v0"), {}};
    for (const auto &x : w) {
        if (x == d_.border) throw InputError("frontier must not contain the border domino");
        auto v = game_.find_state("s:" + x);
        if (!v) throw InputError("unknown domino '" + x + "' in frontier");
        h.append(0, *v);
    }
    h.append(0, *game_.find_state("safe"));
    try {
        check_history(game_, h);
    } catch (const InputError &) {
        throw InputError("frontier is not a horizontally consistent row");
    }
    return h;
}

CorridorGame
gen_corridor_game(const DominoSystem &d)
{
    return CorridorGame(d);
}

GameGraph
gen_random(std::uint64_t seed, const RandomSizes &sz)
{
    if (sz.states < 1 || sz.players < 1 || sz.actions < 1 || sz.observations < 1 || sz.priorities < 1 || sz.colors < 1 ||
        sz.max_targets < 0) {
        throw InputError("random game sizes must be positive");
    }
    std::mt19937_64 rng(seed);
    auto pick = [&](int bound) { return static_cast<int>(rng() % static_cast<std::uint64_t>(bound)); };

    GameGraph::Builder b;
    std::vector<std::string> acts;
    for (int a = 0; a < sz.actions; a++) acts.push_back("a" + std::to_string(a));
    for (int i = 0; i < sz.players; i++) b.player(std::to_string(i + 1), acts);
    auto name = [](int v) { return "s" + std::to_string(v); };
    for (int v = 0; v < sz.states; v++) {
        int prio = pick(sz.priorities);
        int col = pick(sz.colors);
        std::vector<std::string> obs;
        for (int i = 0; i < sz.players; i++) {
            obs.push_back("o" + std::to_string(pick(sz.observations)) + "p" + std::to_string(prio) + "c" + std::to_string(col));
        }
        b.state(name(v), obs, prio, "c" + std::to_string(col));
    }
    b.initial(name(0));

    int num_profiles = 1;
    for (int i = 0; i < sz.players; i++) num_profiles *= sz.actions;
    bool sink = false;
    for (int v = 0; v < sz.states; v++) {
        for (int a = 0; a < num_profiles; a++) {
            std::vector<std::string> prof(sz.players);
            for (int i = sz.players - 1, r = a; i >= 0; i--, r /= sz.actions) prof[i] = acts[r % sz.actions];
            int k = pick(sz.max_targets + 1);
            if (k == 0) {
                sink = true;
                b.move(name(v), prof, "unsafe");
            }
            for (int t = 0; t < k; t++) b.move(name(v), prof, name(pick(sz.states)));
        }
    }
    if (sink) {
        b.state("unsafe", std::vector<std::string>(sz.players, "unsafe"), 1, "unsafe");
        b.fill("unsafe", "unsafe");
    }
    return b.build();
}

}
