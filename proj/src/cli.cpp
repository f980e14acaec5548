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

#include "kgap/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <sstream>

#include "json_util.hpp"
#include "kgap/abridge.hpp"
#include "kgap/epistemic.hpp"
#include "kgap/error.hpp"
#include "kgap/game_io.hpp"
#include "kgap/generators.hpp"
#include "kgap/parity.hpp"
#include "kgap/rcks.hpp"
#include "kgap/synth.hpp"
#include "kgap/unravel.hpp"

namespace kgap::cli {

namespace {

using detail::json;

constexpr const char *kSchema = "kgap/1";

/** Command result printed either as `key: value` lines or as one JSON document. */
class Report
{
public:
    explicit Report(const std::string &command)
    {
        doc_["schema"] = kSchema;
        doc_["command"] = command;
    }

    json &operator[](const char *key) { return doc_[key]; }

    void print(std::ostream &out, bool as_json) const
    {
        if (as_json) {
            out << doc_.dump(2) << '\n';
            return;
        }
        for (auto it = doc_.begin(); it != doc_.end(); ++it) {
            if (it.key() != "schema") text(out, it.key(), it.value());
        }
    }

private:
    static void text(std::ostream &out, const std::string &key, const json &v)
    {
        if (v.is_object()) {
            for (auto it = v.begin(); it != v.end(); ++it) text(out, key + "." + it.key(), it.value());
        } else if (v.is_array()) {
            bool scalars = std::all_of(v.begin(), v.end(), [](const json &x) { return x.is_number() || x.is_boolean(); });
            if (scalars) {
                out << key << ":";
                for (const auto &x : v) out << ' ' << x.dump();
                out << '\n';
            } else {
                for (std::size_t k = 0; k < v.size(); k++) text(out, key + "[" + std::to_string(k) + "]", v[k]);
            }
        } else if (v.is_string()) {
            out << key << ": " << v.get<std::string>() << '\n';
        } else {
            out << key << ": " << v.dump() << '\n';
        }
    }

    json doc_;
};

std::ofstream
open_out(const std::string &path)
{
    std::ofstream f(path);
    if (!f) throw InputError("cannot write '" + path + "'");
    return f;
}

std::string
read_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

GameGraph
load_valid(const std::string &path)
{
    GameGraph g = load_game(path);
    require_valid(g);
    return g;
}

StateId
state_named(const GameGraph &g, const std::string &name)
{
    auto v = g.find_state(name);
    if (!v) throw InputError("unknown state '" + name + "'");
    return *v;
}

json
lasso_json(const GameGraph &g, const PlayLasso &l)
{
    json j;
    j["play"] = format_history(g, l.play);
    j["loop_start"] = l.loop_start;
    j["loop_priority"] = l.loop_priority(g);
    return j;
}

const char *
owner_name(Owner o)
{
    return o == Owner::Coordinator ? "coordinator" : "nature";
}

/** Writes a positional strategy document: winner and chosen successor per position. */
void
write_positional(std::ostream &out, const ParityGame &pg, const std::vector<int> &winner, const std::vector<int> &choice)
{
    json doc;
    doc["format"] = "kgap-positional/1";
    doc["initial"] = pg.initial;
    doc["positions"] = json::array();
    for (int v = 0; v < pg.size(); v++) {
        json p;
        p["id"] = v;
        if (!pg.labels[v].empty()) p["label"] = pg.labels[v];
        p["owner"] = owner_name(pg.owner[v]);
        p["winner"] = winner[v] == 0 ? "coordinator" : "nature";
        p["choice"] = choice[v] >= 0 ? json(choice[v]) : json(nullptr);
        doc["positions"].push_back(p);
    }
    out << doc.dump(1) << '\n';
}

struct Settings
{
    bool as_json = false;
    std::size_t budget = 1000000;
    std::uint64_t seed = 1;

    [[nodiscard]] Budget limits() const { return {budget, budget}; }
};

}

int
run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Coordination games with imperfect information: knowledge analysis, solving and synthesis", "kgap"};
    app.require_subcommand(1);
    app.fallthrough();
    Settings st;
    app.add_flag("--json", st.as_json, "Print structured output as a JSON document");
    app.add_option("--budget", st.budget, "Cap on explored histories and outcome sets")->capture_default_str();
    app.add_option("--seed", st.seed, "Seed for randomized commands")->capture_default_str();

    std::string game, history, out_path, root, strategies, dpa_path, witness;
    int order = 1;
    std::function<int(Report &)> action;
    auto command = [&](const char *name, const char *help) { return app.add_subcommand(name, help); };

    auto *validate_cmd = command("validate", "Check totality and observability of a game");
    validate_cmd->add_option("game", game, "Game file")->required();
    validate_cmd->callback([&] {
        action = [&](Report &r) {
            GameGraph g = load_game(game);
            auto rep = validate(g);
            r["valid"] = rep.ok();
            r["states"] = g.num_states();
            r["players"] = g.num_players();
            r["violations"] = json::array();
            for (const auto &v : rep.violations) r["violations"].push_back(v.message);
            return rep.ok() ? 0 : 1;
        };
    });

    auto *rcks_cmd = command("check-rcks", "Decide whether every play attains common knowledge of the state infinitely often");
    rcks_cmd->add_option("game", game, "Game file")->required();
    rcks_cmd->add_option("--witness", witness, "Write the counterexample play to this file");
    rcks_cmd->callback([&] {
        action = [&](Report &r) {
            GameGraph g = load_valid(game);
            auto fa = build_fork_automaton(g);
            auto v = check_rcks(g, fa);
            r["allows_rcks"] = v.allows_rcks;
            r["fork_states"] = fa.num_states();
            if (v.counterexample) {
                History h = v.counterexample->play(fa);
                r["counterexample"] = format_history(g, h);
                r["loop_start"] = v.counterexample->loop_start;
                if (!witness.empty()) {
                    auto f = open_out(witness);
                    f << format_history(g, h) << '\n' << "loop_start " << v.counterexample->loop_start << '\n';
                }
            }
            return v.allows_rcks ? 0 : 1;
        };
    });

    auto *gap_cmd = command("gap-size", "Longest run of rounds without common knowledge of the state");
    gap_cmd->add_option("game", game, "Game file")->required();
    gap_cmd->callback([&] {
        action = [&](Report &r) {
            GameGraph g = load_valid(game);
            r["gap_size"] = gap_size(g, st.limits());
            return 0;
        };
    });

    auto *ck_cmd = command("ck", "Common knowledge of the current state at a history");
    ck_cmd->add_option("game", game, "Game file")->required();
    ck_cmd->add_option("--history", history, "History `v0 a|b v1 ...`")->required();
    ck_cmd->callback([&] {
        action = [&](Report &r) {
            GameGraph g = load_valid(game);
            History h = parse_history(g, history);
            auto ko = knowledge_order(g, h, st.limits());
            r["history"] = format_history(g, h);
            r["common_knowledge"] = !ko.has_value();
            if (ko) r["knowledge_order"] = *ko;
            return ko ? 1 : 0;
        };
    });

    auto *mk_cmd = command("mk", "Mutual knowledge of the current state, of a given order, at a history");
    mk_cmd->add_option("game", game, "Game file")->required();
    mk_cmd->add_option("--history", history, "History `v0 a|b v1 ...`")->required();
    mk_cmd->add_option("--order", order, "Order k >= 1")->capture_default_str();
    mk_cmd->callback([&] {
        action = [&](Report &r) {
            GameGraph g = load_valid(game);
            History h = parse_history(g, history);
            if (order < 1) throw InputError("order must be at least 1");
            bool mk = order == 1 ? mk_state_at(g, h) : mk_order_at(g, h, order, st.limits());
            r["history"] = format_history(g, h);
            r["order"] = order;
            r["mutual_knowledge"] = mk;
            return mk ? 0 : 1;
        };
    });

    auto *tree_cmd = command("dump-tree", "Print the tree of epistemic components rooted at a state");
    tree_cmd->add_option("game", game, "Game file")->required();
    tree_cmd->add_option("--root", root, "Root state (default: initial)");
    tree_cmd->add_option("--out", out_path, "Write the dump to this file");
    tree_cmd->callback([&] {
        action = [&](Report &r) {
            GameGraph g = load_valid(game);
            StateId v = root.empty() ? g.initial() : state_named(g, root);
            auto t = build_tree(g, v, st.limits());
            r["root"] = g.state_name(v);
            r["nodes"] = t.nodes().size();
            r["ambiguous_depth"] = t.ambiguous_depth();
            r["outcome_sets"] = t.outcomes().size();
            if (out_path.empty()) {
                t.dump(out);
                return -1;
            }
            auto f = open_out(out_path);
            t.dump(f);
            return 0;
        };
    });

    auto *abridge_cmd = command("abridge", "Build the abridged perfect-information parity game");
    abridge_cmd->add_option("game", game, "Game file")->required();
    abridge_cmd->add_option("--out", out_path, "Write the abridged game to this file");
    abridge_cmd->callback([&] {
        action = [&](Report &r) {
            GameGraph g = load_valid(game);
            Unraveller u(g, st.limits());
            auto a = build_abridged(g, u);
            int coord = 0;
            for (const auto &p : a.positions) coord += p.owner == Owner::Coordinator;
            r["positions"] = a.size();
            r["coordinator_positions"] = coord;
            r["nature_positions"] = a.size() - coord;
            r["bound"] = abridged_bound(g);
            if (!out_path.empty()) {
                auto f = open_out(out_path);
                write_abridged(f, g, a);
            }
            return 0;
        };
    });

    auto *solve_cmd = command("solve", "Solve a game or an abridged parity game file");
    solve_cmd->add_option("file", game, "Game or parity game file")->required();
    solve_cmd->add_option("--strategy", out_path, "Write the positional strategies to this file");
    solve_cmd->callback([&] {
        action = [&](Report &r) {
            std::string text = read_file(game);
            std::istringstream in(text);
            json doc = detail::parse_json(in);
            bool parity = doc.is_object() && doc.contains("format") && doc["format"] == "kgap-parity/1";
            ParityGame pg;
            std::vector<int> winner, choice;
            if (parity) {
                std::istringstream again(text);
                pg = read_parity_game(again);
                auto s = solve(pg);
                winner = s.winner;
                choice = s.strategy;
            } else {
                GameGraph g = parse_game(text);
                require_valid(g);
                Unraveller u(g, st.limits());
                auto a = build_abridged(g, u);
                auto s = solve_abridged(g, a);
                pg = a.parity_game(g);
                winner = s.winner;
                choice.assign(a.size(), -1);
                for (int v = 0; v < a.size(); v++) {
                    const auto &p = a.positions[v];
                    if (p.owner == Owner::Coordinator && winner[v] == 0) choice[v] = s.coordinator_choice.at(p.state);
                    if (p.owner == Owner::Nature && winner[v] == 1) choice[v] = s.nature_choice[v];
                }
            }
            int won = 0;
            for (int w : winner) won += w == 0;
            r["positions"] = pg.size();
            r["coordinator_region"] = won;
            r["winner"] = winner[pg.initial] == 0 ? "coordinator" : "nature";
            if (!out_path.empty()) {
                auto f = open_out(out_path);
                write_positional(f, pg, winner, choice);
            }
            return winner[pg.initial] == 0 ? 0 : 1;
        };
    });

    auto *synth_cmd = command("synthesize", "Construct a winning finite-state strategy profile");
    synth_cmd->add_option("game", game, "Game file")->required();
    synth_cmd->add_option("--out", out_path, "Write the strategy profile to this file");
    synth_cmd->callback([&] {
        action = [&](Report &r) {
            GameGraph g = load_valid(game);
            Unraveller u(g, st.limits());
            auto a = build_abridged(g, u);
            auto s = solve_abridged(g, a);
            r["winner"] = s.coordinator_wins ? "coordinator" : "nature";
            if (!s.coordinator_wins) return 1;
            Profile p = transfer_coordinator(g, a, s.coordinator_choice, u);
            r["machine_states"] = json::array();
            for (const auto &m : p.machines) r["machine_states"].push_back(m.size());
            r["verified"] = verify(g, p).winning;
            if (!out_path.empty()) {
                auto f = open_out(out_path);
                write_profile(f, g, p);
            }
            return 0;
        };
    });

    auto *verify_cmd = command("verify", "Check whether a strategy profile wins");
    verify_cmd->add_option("game", game, "Game file")->required();
    verify_cmd->add_option("--strategies", strategies, "Strategy profile file")->required();
    verify_cmd->callback([&] {
        action = [&](Report &r) {
            GameGraph g = load_valid(game);
            Profile p = load_profile(strategies, g);
            auto v = verify(g, p);
            r["winning"] = v.winning;
            r["product_states"] = v.product_states;
            if (v.counterexample) r["counterexample"] = lasso_json(g, *v.counterexample);
            return v.winning ? 0 : 1;
        };
    });

    auto *spoil_cmd = command("spoil", "Construct a play defeating a strategy profile from Nature's abridged strategy");
    spoil_cmd->add_option("game", game, "Game file")->required();
    spoil_cmd->add_option("--strategies", strategies, "Strategy profile file")->required();
    spoil_cmd->callback([&] {
        action = [&](Report &r) {
            GameGraph g = load_valid(game);
            Profile p = load_profile(strategies, g);
            Unraveller u(g, st.limits());
            auto a = build_abridged(g, u);
            auto s = solve_abridged(g, a);
            r["winner"] = s.coordinator_wins ? "coordinator" : "nature";
            if (s.coordinator_wins) {
                r["spoiled"] = false;
                return 1;
            }
            auto sp = construct_spoiler(g, a, s.nature_choice, p, u);
            r["spoiled"] = true;
            r["lasso"] = lasso_json(g, sp.lasso);
            r["rounds"] = sp.rounds;
            return 0;
        };
    });

    auto *product_cmd = command("product", "Product of a game with a deterministic parity automaton over colours");
    product_cmd->add_option("game", game, "Game file")->required();
    product_cmd->add_option("--dpa", dpa_path, "Automaton file")->required();
    product_cmd->add_option("--out", out_path, "Write the product game to this file");
    product_cmd->callback([&] {
        action = [&](Report &r) {
            GameGraph g = load_valid(game);
            GameGraph p = product_with_dpa(g, load_dpa(dpa_path));
            if (out_path.empty()) {
                write_game(out, p);
                return -1;
            }
            save_game(out_path, p);
            r["states"] = p.num_states();
            r["out"] = out_path;
            return 0;
        };
    });

    auto *gen = command("gen", "Generate games");
    gen->require_subcommand(1);
    int m = 3, n = 1, states = 4, players = 2, actions = 2, observations = 2, priorities = 2, colors = 2, targets = 2;
    std::string fig_id, objective = "avoid", frontier;
    auto emit = [&](Report &r, const GameGraph &g) {
        if (out_path.empty()) {
            write_game(out, g);
            return -1;
        }
        save_game(out_path, g);
        r["states"] = g.num_states();
        r["out"] = out_path;
        return 0;
    };

    auto *gen_gm_cmd = gen->add_subcommand("gm", "Single-player family with 3m states and a long knowledge gap");
    gen_gm_cmd->add_option("--m", m, "Parameter m >= 2")->capture_default_str();
    gen_gm_cmd->add_option("--out", out_path, "Output file (default: standard output)");
    gen_gm_cmd->callback([&] { action = [&](Report &r) { return emit(r, gen_gm(m)); }; });

    auto *gen_fig_cmd = gen->add_subcommand("fig", "Two-player consensus examples");
    gen_fig_cmd->add_option("--id", fig_id, "1a, 1b, 2a or 2b")->required();
    gen_fig_cmd->add_option("--n", n, "Loop turns for 2b")->capture_default_str();
    gen_fig_cmd->add_option("--objective", objective, "avoid (unsafe) or reach (safe)")->check(CLI::IsMember({"avoid", "reach"}));
    gen_fig_cmd->add_option("--out", out_path, "Output file (default: standard output)");
    gen_fig_cmd->callback([&] {
        action = [&](Report &r) {
            auto f = gen_figure(fig_id, n, objective == "reach" ? Objective::ReachSafe : Objective::AvoidUnsafe);
            r["marked"] = format_history(f.game, f.marked);
            return emit(r, f.game);
        };
    });

    auto *gen_corr_cmd = gen->add_subcommand("corridor", "Game whose common knowledge encodes corridor tilings");
    gen_corr_cmd->add_option("--dominoes", dpa_path, "Domino system file")->required();
    gen_corr_cmd->add_option("--frontier", frontier, "Report the history of this row (dominoes separated by spaces)");
    gen_corr_cmd->add_option("--out", out_path, "Output file (default: standard output)");
    gen_corr_cmd->callback([&] {
        action = [&](Report &r) {
            CorridorGame c(load_domino_system(dpa_path));
            if (!frontier.empty()) {
                std::istringstream words(frontier);
                std::vector<std::string> w;
                for (std::string x; words >> x;) w.push_back(x);
                r["frontier"] = format_history(c.game(), c.history(w));
            }
            return emit(r, c.game());
        };
    });

    auto *gen_cons_cmd = gen->add_subcommand("consensus", "Consensus game testing common knowledge at a history");
    gen_cons_cmd->add_option("--game", game, "Single-action game file")->required();
    gen_cons_cmd->add_option("--history", history, "History of that game")->required();
    gen_cons_cmd->add_option("--out", out_path, "Output file (default: standard output)");
    gen_cons_cmd->callback([&] {
        action = [&](Report &r) {
            GameGraph g = load_valid(game);
            return emit(r, gen_consensus_ckgame(g, parse_history(g, history)));
        };
    });

    auto *gen_rand_cmd = gen->add_subcommand("random", "Random valid game, deterministic in the seed");
    gen_rand_cmd->add_option("--states", states)->capture_default_str();
    gen_rand_cmd->add_option("--players", players)->capture_default_str();
    gen_rand_cmd->add_option("--actions", actions)->capture_default_str();
    gen_rand_cmd->add_option("--observations", observations)->capture_default_str();
    gen_rand_cmd->add_option("--priorities", priorities)->capture_default_str();
    gen_rand_cmd->add_option("--colors", colors)->capture_default_str();
    gen_rand_cmd->add_option("--max-targets", targets)->capture_default_str();
    gen_rand_cmd->add_option("--out", out_path, "Output file (default: standard output)");
    gen_rand_cmd->callback([&] {
        action = [&](Report &r) {
            RandomSizes sz{states, players, actions, observations, priorities, colors, targets};
            return emit(r, gen_random(st.seed, sz));
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    std::string name;
    for (const auto *sub : app.get_subcommands()) {
        name = sub->get_name();
        for (const auto *leaf : sub->get_subcommands()) name += " " + leaf->get_name();
    }
    Report report(name);
    try {
        int code = action(report);
        if (code < 0) return 0;
        report.print(out, st.as_json);
        return code;
    } catch (const InputError &e) {
        err << "kgap: " << e.what() << '\n';
        return 2;
    } catch (const ResourceError &e) {
        err << "kgap: " << e.what() << '\n';
        return 3;
    } catch (const NotRcksError &e) {
        err << "kgap: " << e.what() << '\n';
        return 1;
    } catch (const NotWinningError &e) {
        err << "kgap: " << e.what() << '\n';
        return 1;
    } catch (const std::exception &e) {
        err << "kgap: internal error: " << e.what() << '\n';
        return 2;
    }
}

}
