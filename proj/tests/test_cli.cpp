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

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kgap/abridge.hpp"
#include "kgap/cli.hpp"
#include "kgap/game_io.hpp"
#include "kgap/generators.hpp"
#include "kgap/rcks.hpp"
#include "suite.hpp"

using namespace kgap;
namespace fs = std::filesystem;

namespace {

struct Result
{
    int code;
    std::string out;
    std::string err;
};

Result
kgap_run(std::vector<std::string> args)
{
    args.insert(args.begin(), "kgap");
    std::vector<const char *> argv;
    for (const auto &a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path
scratch()
{
    fs::path dir = fs::temp_directory_path() / "kgap-cli-test";
    fs::create_directories(dir);
    return dir;
}

std::string
write_file(const std::string &name, const std::string &text)
{
    fs::path p = scratch() / name;
    std::ofstream(p) << text;
    return p.string();
}

std::string
save(const std::string &name, const GameGraph &g)
{
    return write_file(name, serialize_game(g));
}

}

TEST_CASE("cli: generated G_3 allows recurring common knowledge")
{
    std::string path = (scratch() / "gm3.game").string();
    REQUIRE(kgap_run({"gen", "gm", "--m", "3", "--out", path}).code == 0);
    auto r = kgap_run({"check-rcks", path});
    CHECK(r.code == 0);
    CHECK(r.out.find("allows_rcks: true") != std::string::npos);
    r = kgap_run({"gap-size", path});
    CHECK(r.code == 0);
    CHECK(r.out.find("gap_size: 8") != std::string::npos);
}

TEST_CASE("cli: structured output carries the schema")
{
    std::string path = save("gm2.game", gen_gm(2));
    auto r = kgap_run({"--json", "gap-size", path});
    REQUIRE(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["schema"] == "kgap/1");
    CHECK(doc["command"] == "gap-size");
    CHECK(doc["gap_size"] == 3);
}

TEST_CASE("cli: common knowledge along the G_3 cycle")
{
    std::string path = save("gm3b.game", gen_gm(3));
    std::string cycle = "init";
    for (int k = 0; k < 8; k++) cycle += std::string(" go ") + (k % 3 == 0 ? "c1" : k % 3 == 1 ? "c2" : "z");
    auto r = kgap_run({"ck", path, "--history", cycle});
    CHECK(r.code == 1);
    CHECK(r.out.find("common_knowledge: false") != std::string::npos);
    r = kgap_run({"ck", path, "--history", cycle + " go z"});
    CHECK(r.code == 0);
    r = kgap_run({"mk", path, "--history", "init go c1", "--order", "2"});
    CHECK(r.code == 1);
}

TEST_CASE("cli: counterexample witness file")
{
    std::string path = save("f2b.game", gen_figure("2b", 1).game);
    std::string witness = (scratch() / "w.trace").string();
    auto r = kgap_run({"check-rcks", path, "--witness", witness});
    CHECK(r.code == 1);
    std::ifstream in(witness);
    std::string first;
    std::getline(in, first);
    CHECK(first.rfind("root ", 0) == 0);
}

TEST_CASE("cli: input errors exit with 2")
{
    CHECK(kgap_run({"gap-size", (scratch() / "missing.game").string()}).code == 2);
    CHECK(kgap_run({"gap-size", write_file("bad.game", "{ not json")}).code == 2);
    CHECK(kgap_run({"frobnicate"}).code == 2);
    CHECK(kgap_run({}).code == 2);
    std::string path = save("gm2b.game", gen_gm(2));
    CHECK(kgap_run({"ck", path, "--history", "init go nowhere"}).code == 2);
    CHECK(kgap_run({"mk", path, "--history", "init", "--order", "0"}).code == 2);
    CHECK(kgap_run({"gen", "fig", "--id", "9z"}).code == 2);
    CHECK(kgap_run({"--help"}).code == 0);
}

TEST_CASE("cli: invalid games fail validation")
{
    std::string text = R"({"players": ["1"], "actions": [["a", "b"]],
        "states": [{"id": "s", "obs": ["o"], "priority": 0}], "initial": "s",
        "moves": [{"from": "s", "profile": ["a"], "to": "s"}]})";
    std::string path = write_file("partial.game", text);
    auto r = kgap_run({"validate", path});
    CHECK(r.code == 1);
    CHECK(r.out.find("valid: false") != std::string::npos);
    CHECK(kgap_run({"check-rcks", path}).code == 2);
}

TEST_CASE("cli: budgets exit with 3")
{
    std::string path = save("gm4.game", gen_gm(4));
    CHECK(kgap_run({"--budget", "5", "gap-size", path}).code == 3);
}

TEST_CASE("cli: games without recurring common knowledge give a negative verdict")
{
    std::string path = save("f2b2.game", gen_figure("2b", 2).game);
    CHECK(kgap_run({"gap-size", path}).code == 1);
}

TEST_CASE("cli: synthesize then verify wins on every Coordinator-winning suite game")
{
    int won = 0, lost = 0;
    for (const auto &e : suite::games()) {
        if (!check_rcks(e.game).allows_rcks) continue;
        std::string game = save(e.name + ".game", e.game);
        std::string strat = (scratch() / (e.name + ".strat")).string();
        auto s = kgap_run({"synthesize", game, "--out", strat});
        INFO(e.name);
        REQUIRE((s.code == 0 || s.code == 1));
        if (s.code == 0) {
            won++;
            CHECK(kgap_run({"verify", game, "--strategies", strat}).code == 0);
            CHECK(kgap_run({"spoil", game, "--strategies", strat}).code == 1);
            CHECK(kgap_run({"solve", game}).code == 0);
        } else {
            lost++;
            CHECK(kgap_run({"solve", game}).code == 1);
        }
    }
    CHECK(won > 0);
    CHECK(lost > 0);
}

TEST_CASE("cli: a spoiler defeats always-in on a reachability example")
{
    GameGraph g = gen_figure("1a", 1, Objective::ReachSafe).game;
    std::string game = save("f1a-reach.game", g);
    std::string strat = write_file("in.strat", R"({"format": "kgap-strategy/1", "players": [
        {"player": "1", "initial": 0, "states": [{"id": 0, "action": "in",
          "next": {"bullet": 0, "circle": 0, "cross": 0, "dots": 0, "safe": 0, "unsafe": 0}}]},
        {"player": "2", "initial": 0, "states": [{"id": 0, "action": "in",
          "next": {"bullet": 0, "circle": 0, "cross": 0, "dots": 0, "safe": 0, "unsafe": 0}}]}]})");
    CHECK(kgap_run({"verify", game, "--strategies", strat}).code == 1);
    auto r = kgap_run({"--json", "spoil", game, "--strategies", strat});
    REQUIRE(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["spoiled"] == true);
    CHECK(doc["lasso"]["loop_priority"].get<int>() % 2 == 1);
}

TEST_CASE("cli: abridged files solve to the same verdict")
{
    std::string game = save("f2a.game", gen_figure("2a").game);
    std::string ab = (scratch() / "f2a.abridged").string();
    std::string pos = (scratch() / "f2a.pos").string();
    REQUIRE(kgap_run({"abridge", game, "--out", ab}).code == 0);
    CHECK(kgap_run({"solve", ab, "--strategy", pos}).code == 0);
    std::ifstream in(pos);
    auto doc = nlohmann::json::parse(in);
    CHECK(doc["format"] == "kgap-positional/1");
    CHECK(doc["positions"].size() > 0);
}

TEST_CASE("cli: generators are deterministic and products are games")
{
    auto a = kgap_run({"--seed", "5", "gen", "random", "--states", "3"});
    auto b = kgap_run({"--seed", "5", "gen", "random", "--states", "3"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    std::string game = write_file("r5.game", a.out);
    std::string dpa = write_file("two.dpa", R"({"states": [{"id": "p", "priority": 0}, {"id": "q", "priority": 1}], "initial": "p",
        "alphabet": ["c0", "c1", "unsafe"],
        "transitions": [{"from": "p", "color": "c0", "to": "p"}, {"from": "p", "color": "c1", "to": "q"},
                        {"from": "q", "color": "c0", "to": "p"}, {"from": "q", "color": "c1", "to": "q"},
                        {"from": "p", "color": "unsafe", "to": "q"}, {"from": "q", "color": "unsafe", "to": "q"}]})");
    auto p = kgap_run({"product", game, "--dpa", dpa});
    REQUIRE(p.code == 0);
    CHECK_NOTHROW(parse_game(p.out));

    std::string g1 = save("single.game", gen_gm(2));
    auto c = kgap_run({"gen", "consensus", "--game", g1, "--history", "init go p1"});
    REQUIRE(c.code == 0);
    CHECK_NOTHROW(parse_game(c.out));

    std::string dom = write_file("single.dom", R"({"dominoes": ["#", "_", "a", "b"], "border": "#", "bottom": "_",
        "horizontal": [["#", "_"], ["_", "_"], ["_", "#"], ["#", "a"], ["a", "b"], ["b", "#"]],
        "vertical": [["_", "a"], ["_", "b"], ["#", "#"]]})");
    std::string corridor = (scratch() / "corridor.game").string();
    auto r = kgap_run({"gen", "corridor", "--dominoes", dom, "--frontier", "a b", "--out", corridor});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("frontier: v0 go|go s:a go|go s:b go|go safe") != std::string::npos);
    CHECK(kgap_run({"ck", corridor, "--history", "v0 go|go s:a go|go s:b go|go safe"}).code == 1);
}

TEST_CASE("cli: dump-tree prints nodes")
{
    std::string game = save("gm2c.game", gen_gm(2));
    auto r = kgap_run({"dump-tree", game});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("\nnode 0 ") != std::string::npos);
    CHECK(kgap_run({"dump-tree", game, "--root", "nope"}).code == 2);
}
