// Copyright 2026 The QNet Simulator Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "doctest.h"

#include "qnet/cli/commands.hpp"
#include "qnet/cli/run_config.hpp"
#include "qnet/errors.hpp"
#include "qnet/model/checkpoint.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

using namespace qnet;
using namespace qnet::cli;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("qnet_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(const std::vector<std::string> &args, const GradientFns &fns = default_gradient_fns()) {
    std::ostringstream out, err;
    const int code = run(args, out, err, fns);
    return {code, out.str(), err.str()};
}

std::vector<std::string> read_lines(const fs::path &p) {
    std::ifstream f(p);
    std::vector<std::string> lines;
    for (std::string line; std::getline(f, line);) {
        lines.push_back(line);
    }
    return lines;
}

std::string read_all(const fs::path &p) {
    std::ifstream f(p);
    return {std::istreambuf_iterator<char>(f), {}};
}

fs::path only_child(const fs::path &dir) {
    std::vector<fs::path> children;
    for (const auto &e : fs::directory_iterator(dir)) {
        children.push_back(e.path());
    }
    REQUIRE(children.size() == 1);
    return children.front();
}

} // namespace

TEST_CASE("run config resolution") {
    SUBCASE("defaults follow the training protocol") {
        const RunConfig c;
        CHECK(c.n == 8);
        CHECK(c.epochs == 5);
        CHECK(c.steps_per_epoch == 100);
        CHECK(c.batch_size == 128);
        CHECK(c.lr == 3e-4);
        const RunConfig s = noise_sweep_defaults();
        CHECK(s.epochs == 1);
        CHECK(s.batch_size == 8);
        CHECK(s.trajectories == 8);
    }
    SUBCASE("json round trip") {
        RunConfig c;
        c.model = "resqnet";
        c.d = 3;
        c.p_list = {0.0, 0.25};
        c.sweep_n = {2, 4};
        c.seed = 99;
        const RunConfig back = from_json(to_json(c));
        CHECK(to_json(back) == to_json(c));
    }
    SUBCASE("overrides are typed by field") {
        const RunConfig c = apply_overrides(
            RunConfig{}, {{"n", "4"}, {"lr", "0.01"}, {"p_list", "0.1,0.5"}, {"model", "resqnet"},
                          {"sweep_d", "[2,4]"}});
        CHECK(c.n == 4);
        CHECK(c.lr == 0.01);
        CHECK(c.p_list == std::vector<double>{0.1, 0.5});
        CHECK(c.model == "resqnet");
        CHECK(c.sweep_d == std::vector<std::size_t>{2, 4});
    }
    SUBCASE("field-level errors") {
        CHECK_THROWS_AS(from_json({{"colour", 1}}), ConfigError);
        CHECK_THROWS_AS(from_json({{"n", -1}}), ConfigError);
        CHECK_THROWS_AS(from_json({{"n", "four"}}), ConfigError);
        CHECK_THROWS_AS(apply_overrides(RunConfig{}, {{"d", "x"}}), ConfigError);
        RunConfig c;
        c.d = 0;
        try {
            validate(c);
            FAIL("expected ConfigError");
        } catch (const ConfigError &e) {
            CHECK(std::string(e.what()).find("'d'") != std::string::npos);
        }
        c = RunConfig{};
        c.n = 9;
        c.d = 3;
        CHECK_NOTHROW(validate(c));
        CHECK_THROWS_AS(validate_simulable(c), ConfigError);
        c = RunConfig{};
        c.p_list = {0.1, 1.5};
        CHECK_THROWS_AS(validate(c), ConfigError);
        c = RunConfig{};
        c.ablation = "none";
        CHECK_THROWS_AS(validate(c), ConfigError);
    }
}

TEST_CASE("exit codes") {
    TempDir tmp;
    const std::string out = tmp.path.string();
    CHECK(invoke({"train", "--d", "0", "--out", out}).code == kExitConfig);
    CHECK(invoke({"train", "--colour", "red", "--out", out}).code == kExitConfig);
    CHECK(invoke({"train", "--n"}).code == kExitConfig);
    CHECK(invoke({"frobnicate"}).code == kExitConfig);
    CHECK(invoke({}).code == kExitConfig);
    CHECK(invoke({"train", "--config", (tmp.path / "missing.json").string()}).code ==
          kExitConfig);
    CHECK(invoke({"eval", "--out", out}).code == kExitConfig);
    // A dataset file that does not exist is a runtime failure.
    CHECK(invoke({"train", "--dataset", (tmp.path / "none.csv").string(), "--out", out}).code ==
          kExitFailure);
    CHECK(invoke({"--help"}).code == kExitOk);
}

TEST_CASE("train writes a complete run directory") {
    TempDir tmp;
    const auto r = invoke({"train", "--n", "4", "--d", "2", "--batch_size", "2", "--seed", "7",
                           "--out", tmp.path.string()});
    REQUIRE(r.code == kExitOk);
    const fs::path dir = only_child(tmp.path);
    CHECK(dir.filename().string().ends_with("-s7"));
    CHECK(dir.filename().string().size() == std::string("YYYYMMDDTHHMMSS-s7").size());
    for (const char *name : {"metrics.jsonl", "checkpoint.json", "config.json", "circuit.txt"}) {
        CHECK(fs::exists(dir / name));
    }
    const auto lines = read_lines(dir / "metrics.jsonl");
    CHECK(lines.size() == 500);
    std::size_t evals = 0;
    for (const auto &line : lines) {
        const auto j = nlohmann::json::parse(line);
        evals += j.contains("eval") ? 1 : 0;
    }
    CHECK(evals == 5);
    const auto circuit = read_all(dir / "circuit.txt");
    CHECK(circuit.find("ff[0]") != std::string::npos);
    CHECK(circuit.find("mix[0]") != std::string::npos);

    SUBCASE("the config snapshot reproduces the run bit-identically") {
        TempDir again;
        const auto r2 = invoke({"train", "--config", (dir / "config.json").string(), "--out",
                                again.path.string()});
        REQUIRE(r2.code == kExitOk);
        const fs::path dir2 = only_child(again.path);
        CHECK(read_all(dir2 / "checkpoint.json") == read_all(dir / "checkpoint.json"));
        CHECK(read_all(dir2 / "metrics.jsonl") == read_all(dir / "metrics.jsonl"));
    }
    SUBCASE("eval reloads the checkpoint") {
        const auto e = invoke({"eval", "--run", dir.string()});
        REQUIRE(e.code == kExitOk);
        const auto report = nlohmann::json::parse(read_all(dir / "eval.json"));
        const auto last = nlohmann::json::parse(lines.back());
        CHECK(report["train"] == last["eval"]["train"]);
        CHECK(report["test"] == last["eval"]["test"]);
    }
    SUBCASE("eval rejects a mismatched configuration") {
        const auto e = invoke({"eval", "--checkpoint", (dir / "checkpoint.json").string(), "--n",
                               "4", "--d", "3", "--seed", "7"});
        CHECK(e.code == kExitFailure);
    }
}

TEST_CASE("ablation changes the dumped circuit") {
    TempDir tmp;
    const auto r = invoke({"train", "--n", "2", "--d", "2", "--epochs", "1", "--steps_per_epoch",
                           "1", "--batch_size", "1", "--ablation", "mixture_only", "--out",
                           tmp.path.string()});
    REQUIRE(r.code == kExitOk);
    const auto circuit = read_all(only_child(tmp.path) / "circuit.txt");
    CHECK(circuit.find("ff[") == std::string::npos);
    CHECK(circuit.find("mix[0]") != std::string::npos);
}

TEST_CASE("analyze") {
    TempDir tmp;
    SUBCASE("large configurations report counts") {
        const auto path = tmp.path / "a.json";
        const auto r = invoke({"analyze", "--n", "8", "--d", "128", "--blocks", "2", "--json",
                               path.string()});
        REQUIRE(r.code == kExitOk);
        const auto j = nlohmann::json::parse(read_all(path));
        CHECK(j["entries"][0]["parameters"] == 2304);
        CHECK(r.out.find("2304") != std::string::npos);
    }
    SUBCASE("qnet against a one-block resqnet") {
        RunConfig c;
        c.d = 2;
        c.n = 4;
        CHECK(analyze_report(c)["entries"][0]["parameters"] == 18);
        c.model = "resqnet";
        CHECK(analyze_report(c)["entries"][0]["parameters"] == 20);
    }
    SUBCASE("mixture depth grows with n") {
        RunConfig c;
        c.d = 2;
        c.sweep_n = {2, 4, 8};
        const auto j = analyze_report(c);
        std::vector<std::size_t> depth;
        for (const auto &e : j["entries"]) {
            depth.push_back(e["layers"]["mix[0]"]["depth"].get<std::size_t>());
            CHECK(e["layers"]["enc"]["depth"] == 2);
        }
        REQUIRE(depth.size() == 3);
        CHECK(depth[0] < depth[1]);
        CHECK(depth[1] < depth[2]);
        // Constant increments per doubling would be logarithmic; linear growth doubles them.
        CHECK(depth[2] - depth[1] > depth[1] - depth[0]);
    }
    SUBCASE("pure function of the configuration") {
        RunConfig c;
        c.sweep_n = {2, 3};
        c.sweep_d = {1, 2};
        CHECK(analyze_report(c) == analyze_report(c));
        CHECK(analyze_report(c)["entries"].size() == 4);
    }
    SUBCASE("default json path lives under --out") {
        const auto r = invoke({"analyze", "--out", tmp.path.string()});
        CHECK(r.code == kExitOk);
        CHECK(fs::exists(tmp.path / "analysis.json"));
    }
}

TEST_CASE("gradcheck") {
    TempDir tmp;
    SUBCASE("default seed passes on (2,2,1)") {
        const auto r = invoke({"gradcheck", "--n", "2", "--d", "2"});
        CHECK(r.code == kExitOk);
        CHECK(r.out.find("PASS") != std::string::npos);
    }
    SUBCASE("unused parameter probe reports zero") {
        RunConfig c;
        c.n = 2;
        c.d = 2;
        c.gradcheck_instances = 2;
        std::ostringstream out;
        const auto report = cmd_gradcheck(c, out);
        CHECK(report.pass);
        CHECK(report.unused_gradient == 0.0);
        CHECK(report.max_deviation <= kGradcheckTolerance);
    }
    SUBCASE("a corrupted shift rule fails at the corrupted index") {
        GradientFns fns = default_gradient_fns();
        const auto honest = fns.parameter_shift;
        fns.parameter_shift = [honest](const circuit::Circuit &circ, std::span<const double> p,
                                       const sim::StateVector &in, std::span<const double> cot) {
            auto g = honest(circ, p, in, cot);
            g[5] += 1e-3;
            return g;
        };
        const auto r = invoke({"gradcheck", "--n", "2", "--d", "2"}, fns);
        CHECK(r.code == kExitFailure);
        CHECK(r.out.find("parameter 5") != std::string::npos);
        CHECK(r.out.find("FAIL") != std::string::npos);
    }
    SUBCASE("n*d above 8 is a configuration error") {
        CHECK(invoke({"gradcheck", "--n", "3", "--d", "3"}).code == kExitConfig);
    }
}

TEST_CASE("noise sweep helpers") {
    SUBCASE("jitter ignores a linear trend") {
        std::vector<double> line(50);
        for (std::size_t t = 0; t < line.size(); ++t) {
            line[t] = 2.0 - 0.01 * static_cast<double>(t);
        }
        CHECK(loss_jitter(line) == doctest::Approx(0.0).epsilon(1e-12));
        auto bumpy = line;
        for (std::size_t t = 0; t < bumpy.size(); ++t) {
            bumpy[t] += (t % 2 == 0 ? 0.1 : -0.1);
        }
        CHECK(loss_jitter(bumpy) == doctest::Approx(0.1).epsilon(0.05));
        auto bumpier = line;
        for (std::size_t t = 0; t < bumpier.size(); ++t) {
            bumpier[t] += (t % 2 == 0 ? 0.3 : -0.3);
        }
        CHECK(loss_jitter(bumpier) > loss_jitter(bumpy));
        CHECK(is_descending(line));
        CHECK(is_descending(bumpy));
        std::vector<double> flat(30, 1.0);
        CHECK_FALSE(is_descending(flat));
    }
}

TEST_CASE("noise sweep at p=0 matches noise-free training") {
    TempDir tmp;
    const std::vector<std::string> common{"--n", "4", "--d", "2", "--steps_per_epoch", "20",
                                          "--seed", "11"};
    auto sweep_args = common;
    sweep_args.insert(sweep_args.begin(), "noise-sweep");
    for (const char *a : {"--p_list", "0", "--out", "sweep"}) {
        sweep_args.emplace_back(a);
    }
    sweep_args.back() = (tmp.path / "sweep").string();
    REQUIRE(invoke(sweep_args).code == kExitOk);

    auto train_args = common;
    train_args.insert(train_args.begin(), "train");
    for (const char *a : {"--epochs", "1", "--batch_size", "8", "--trajectories", "8", "--out"}) {
        train_args.emplace_back(a);
    }
    train_args.push_back((tmp.path / "train").string());
    REQUIRE(invoke(train_args).code == kExitOk);

    const fs::path sweep_dir = only_child(tmp.path / "sweep");
    CHECK(sweep_dir.filename().string().ends_with("-s11-sweep"));
    CHECK(read_all(sweep_dir / "metrics_p0.jsonl") ==
          read_all(only_child(tmp.path / "train") / "metrics.jsonl"));
    const auto summary = nlohmann::json::parse(read_all(sweep_dir / "summary.json"));
    REQUIRE(summary.size() == 1);
    CHECK(summary[0]["steps"] == 20);
    CHECK(summary[0].contains("jitter"));
    CHECK(summary[0].contains("final_loss"));
}

TEST_CASE("thread override") {
    ::setenv("QNET_NUM_THREADS", "zero", 1);
    CHECK(invoke({"analyze", "--n", "2", "--d", "1", "--json", "/dev/null"}).code == kExitConfig);
    ::setenv("QNET_NUM_THREADS", "1", 1);
    CHECK(invoke({"analyze", "--n", "2", "--d", "1", "--json", "/dev/null"}).code == kExitOk);
    ::unsetenv("QNET_NUM_THREADS");
}
