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
#include "qnet/cli/commands.hpp"

#include "qnet/autodiff/gradients.hpp"
#include "qnet/circuit/analysis.hpp"
#include "qnet/circuit/dump.hpp"
#include "qnet/errors.hpp"
#include "qnet/model/checkpoint.hpp"
#include "qnet/model/qnet_circuit.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>

namespace qnet::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_text(const fs::path &path, const std::string &text) {
    std::ofstream f(path);
    if (!f) {
        throw Error("cannot write " + path.string());
    }
    f << text;
}

json read_json(const fs::path &path) {
    std::ifstream f(path);
    if (!f) {
        throw ConfigError("cannot open " + path.string());
    }
    json j = json::parse(f, nullptr, false);
    if (j.is_discarded()) {
        throw ConfigError(path.string() + " is not valid JSON");
    }
    return j;
}

std::string format_p(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", p);
    return buf;
}

void print_eval(std::ostream &out, const std::string &name, const json &m) {
    out << "  " << name << ':';
    for (const auto &[k, v] : m.items()) {
        out << ' ' << k << '=' << v.dump();
    }
    out << '\n';
}

double mean_of(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) {
        s += x;
    }
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

constexpr std::size_t kWindow = 10;

} // namespace

fs::path make_run_directory(const RunConfig &c, const std::string &suffix) {
    const std::time_t now =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y%m%dT%H%M%S", &utc);
    const std::string base = std::string(stamp) + "-s" + std::to_string(c.seed) + suffix;
    fs::create_directories(c.out);
    fs::path dir = fs::path(c.out) / base;
    for (int k = 2; !fs::create_directory(dir); ++k) {
        dir = fs::path(c.out) / (base + "-" + std::to_string(k));
    }
    return dir;
}

fs::path cmd_train(const RunConfig &c, std::ostream &out) {
    validate_simulable(c);
    const auto loaded = load_data(c);
    const model::HybridModel model(loaded.model);
    const auto tc = train_config(c);

    const fs::path dir = make_run_directory(c);
    write_text(dir / "config.json", to_json(c).dump(2) + "\n");
    write_text(dir / "circuit.txt", circuit::dump(model.block_circuit()));
    std::ofstream metrics(dir / "metrics.jsonl");

    out << "run directory: " << dir.string() << '\n';
    const auto result = train::train(
        model, loaded.prepared.train, loaded.prepared.test, tc,
        [&](const train::StepRecord &r) {
            metrics << train::to_json(r).dump() << '\n';
            if (r.eval) {
                out << "epoch " << r.epoch << " step " << r.step << " loss " << r.loss << '\n';
                for (const auto &[split, m] : r.eval->items()) {
                    print_eval(out, split, m);
                }
            }
        });
    metrics.flush();
    model::save_checkpoint(dir / "checkpoint.json", loaded.model, result.params);
    return dir;
}

json cmd_eval(const RunConfig &c, const fs::path &checkpoint, std::ostream &out) {
    validate_simulable(c);
    const auto ck = model::load_checkpoint(checkpoint);
    const auto loaded = load_data(c);
    if (!(ck.config == loaded.model)) {
        throw DataError("checkpoint model " + model::config_to_json(ck.config).dump() +
                        " does not match the configuration " +
                        model::config_to_json(loaded.model).dump());
    }
    const model::HybridModel model(ck.config);
    const json report{
        {"train", train::to_json(train::evaluate(model, ck.params, loaded.prepared.train),
                                 ck.config.head)},
        {"test", train::to_json(train::evaluate(model, ck.params, loaded.prepared.test),
                                ck.config.head)}};
    out << report.dump(2) << '\n';
    return report;
}

json analyze_report(const RunConfig &c) {
    validate(c);
    const auto kind = model::parse_model_kind(c.model);
    const auto ablation = model::parse_ablation(c.ablation);
    const auto ns = c.sweep_n.empty() ? std::vector<std::size_t>{c.n} : c.sweep_n;
    const auto ds = c.sweep_d.empty() ? std::vector<std::size_t>{c.d} : c.sweep_d;
    // ResQNet runs `blocks` copies of a depth-1 circuit.
    const std::size_t circuit_blocks = kind == model::ModelKind::qnet ? c.blocks : 1;

    json entries = json::array();
    for (std::size_t n : ns) {
        for (std::size_t d : ds) {
            const model::QNetConfig qc{n, d, circuit_blocks};
            const auto circ = model::build_qnet_symbolic(qc, ablation);
            const auto depth = circuit::analyze_depth(circ);
            std::size_t gates = 0;
            for (const auto &[name, count] : depth.gate_count) {
                gates += count;
            }
            json layers = json::object();
            for (const auto &[tag, layer_depth] : depth.per_layer_depth) {
                std::size_t layer_gates = 0;
                for (const auto &[name, count] : circuit::count_gates(circ, tag)) {
                    layer_gates += count;
                }
                layers[tag] = {{"depth", layer_depth}, {"gates", layer_gates}};
            }
            entries.push_back({{"n", n},
                               {"d", d},
                               {"qubits", n * d},
                               {"parameters", model::encoder_parameter_count(kind, d, c.blocks)},
                               {"circuit_parameters", model::count_parameters(qc)},
                               {"depth", depth.total_depth},
                               {"gates", gates},
                               {"gate_count", depth.gate_count},
                               {"layers", layers}});
        }
    }
    return {{"model", c.model},
            {"blocks", c.blocks},
            {"ablation", c.ablation},
            {"circuits_per_forward", kind == model::ModelKind::qnet ? 1 : c.blocks},
            {"entries", entries}};
}

json cmd_analyze(const RunConfig &c, const fs::path &json_path, std::ostream &out) {
    const json report = analyze_report(c);
    out << "model " << c.model << " blocks " << c.blocks << " ablation " << c.ablation << '\n';
    out << std::setw(5) << "n" << std::setw(5) << "d" << std::setw(12) << "parameters"
        << std::setw(8) << "depth" << std::setw(8) << "gates" << "  layers (depth/gates)\n";
    for (const auto &e : report["entries"]) {
        out << std::setw(5) << e["n"].get<std::size_t>() << std::setw(5)
            << e["d"].get<std::size_t>() << std::setw(12) << e["parameters"].get<std::size_t>()
            << std::setw(8) << e["depth"].get<std::size_t>() << std::setw(8)
            << e["gates"].get<std::size_t>() << ' ';
        for (const auto &[tag, l] : e["layers"].items()) {
            out << ' ' << tag << '=' << l["depth"].get<std::size_t>() << '/'
                << l["gates"].get<std::size_t>();
        }
        out << '\n';
    }
    if (json_path.has_parent_path()) {
        fs::create_directories(json_path.parent_path());
    }
    write_text(json_path, report.dump(2) + "\n");
    out << "report written to " << json_path.string() << '\n';
    return report;
}

GradientFns default_gradient_fns() {
    return {[](const circuit::Circuit &circ, std::span<const double> params,
               const sim::StateVector &input, std::span<const double> cot) {
                return autodiff::adjoint_gradient(circ, params, input, cot);
            },
            [](const circuit::Circuit &circ, std::span<const double> params,
               const sim::StateVector &input, std::span<const double> cot) {
                return autodiff::parameter_shift_gradient(circ, params, input, cot);
            },
            [](const circuit::Circuit &circ, std::span<const double> params,
               const sim::StateVector &input, std::span<const double> cot) {
                return autodiff::finite_difference_gradient(circ, params, input, cot);
            }};
}

GradcheckReport cmd_gradcheck(const RunConfig &c, std::ostream &out, const GradientFns &fns) {
    validate(c);
    if (c.n * c.d > 8) {
        throw ConfigError("field 'd': gradcheck needs n*d <= 8 (got " +
                          std::to_string(c.n * c.d) + ")");
    }
    const model::QNetConfig qc{c.n, c.d, c.blocks};
    const auto circ = model::build_qnet_symbolic(qc, model::parse_ablation(c.ablation));
    const std::size_t used = model::count_parameters(qc) + c.n * c.d;
    // One extra slot that no gate reads.
    const std::size_t unused = used;

    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    std::normal_distribution<double> normal;

    GradcheckReport report;
    const sim::StateVector input = sim::init_zero(model::num_qubits(qc));
    for (std::size_t inst = 0; inst < c.gradcheck_instances; ++inst) {
        std::vector<double> params(used + 1);
        for (auto &p : params) {
            p = angle(rng);
        }
        std::vector<double> cot(model::num_qubits(qc));
        for (auto &w : cot) {
            w = normal(rng);
        }
        const std::vector<std::pair<std::string, std::vector<double>>> grads{
            {"adjoint", fns.adjoint(circ, params, input, cot)},
            {"shift", fns.parameter_shift(circ, params, input, cot)},
            {"finite_difference", fns.finite_difference(circ, params, input, cot)}};
        for (const auto &[name, g] : grads) {
            if (g.size() != params.size()) {
                throw Error(name + " gradient has " + std::to_string(g.size()) +
                            " entries, expected " + std::to_string(params.size()));
            }
            report.unused_gradient = std::max(report.unused_gradient, std::abs(g[unused]));
        }
        for (std::size_t a = 0; a < grads.size(); ++a) {
            for (std::size_t b = a + 1; b < grads.size(); ++b) {
                for (std::size_t i = 0; i < params.size(); ++i) {
                    const double dev = std::abs(grads[a].second[i] - grads[b].second[i]);
                    if (dev > report.max_deviation || !std::isfinite(dev)) {
                        report.max_deviation = std::isfinite(dev) ? dev : INFINITY;
                        report.worst_index = i;
                        report.worst_pair = grads[a].first + " vs " + grads[b].first;
                    }
                }
            }
        }
    }
    report.pass = report.max_deviation <= kGradcheckTolerance &&
                  report.unused_gradient <= kGradcheckTolerance;

    out << "gradcheck n=" << c.n << " d=" << c.d << " blocks=" << c.blocks
        << " instances=" << c.gradcheck_instances << " parameters=" << used << '\n';
    out << "max pairwise deviation " << report.max_deviation;
    if (!report.worst_pair.empty()) {
        out << " (" << report.worst_pair << ", parameter " << report.worst_index << ')';
    }
    out << '\n';
    out << "unused parameter " << unused << " gradient " << report.unused_gradient << '\n';
    out << (report.pass ? "PASS" : "FAIL") << " (tolerance " << kGradcheckTolerance << ")\n";
    return report;
}

double loss_jitter(std::span<const double> losses) {
    const std::size_t m = losses.size();
    if (m < 3) {
        return 0.0;
    }
    const double tm = (static_cast<double>(m) - 1.0) / 2.0;
    const double lm = mean_of(losses);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t t = 0; t < m; ++t) {
        const double dt = static_cast<double>(t) - tm;
        sxy += dt * (losses[t] - lm);
        sxx += dt * dt;
    }
    const double slope = sxy / sxx;
    double ss = 0.0;
    for (std::size_t t = 0; t < m; ++t) {
        const double r = losses[t] - (lm + slope * (static_cast<double>(t) - tm));
        ss += r * r;
    }
    return std::sqrt(ss / static_cast<double>(m - 2));
}

bool is_descending(std::span<const double> losses) {
    const std::size_t w = std::min(kWindow, losses.size() / 2);
    if (w == 0) {
        return false;
    }
    return mean_of(losses.last(w)) < mean_of(losses.first(w));
}

SweepResult cmd_noise_sweep(const RunConfig &c, std::ostream &out) {
    validate_simulable(c);
    const auto loaded = load_data(c);
    const model::HybridModel model(loaded.model);

    SweepResult result;
    result.directory = make_run_directory(c, "-sweep");
    write_text(result.directory / "config.json", to_json(c).dump(2) + "\n");

    json summary = json::array();
    for (double p : c.p_list) {
        RunConfig rc = c;
        rc.noise_p = p;
        std::ofstream metrics(result.directory / ("metrics_p" + format_p(p) + ".jsonl"));
        SweepRun run;
        run.p = p;
        train::train(model, loaded.prepared.train, loaded.prepared.test, train_config(rc),
                     [&](const train::StepRecord &r) {
                         metrics << train::to_json(r).dump() << '\n';
                         run.losses.push_back(r.loss);
                     });
        const std::size_t w = std::min(kWindow, run.losses.size());
        run.jitter = loss_jitter(run.losses);
        const double lm = mean_of(run.losses);
        double ss = 0.0;
        for (double l : run.losses) {
            ss += (l - lm) * (l - lm);
        }
        run.raw_std = run.losses.size() > 1
                          ? std::sqrt(ss / static_cast<double>(run.losses.size() - 1))
                          : 0.0;
        run.initial_loss = mean_of(std::span<const double>(run.losses).first(w));
        run.final_loss = mean_of(std::span<const double>(run.losses).last(w));
        run.descending = is_descending(run.losses);
        summary.push_back({{"p", p},
                           {"steps", run.losses.size()},
                           {"jitter", run.jitter},
                           {"loss_std", run.raw_std},
                           {"initial_loss", run.initial_loss},
                           {"final_loss", run.final_loss},
                           {"descending", run.descending}});
        result.runs.push_back(std::move(run));
    }
    write_text(result.directory / "summary.json", summary.dump(2) + "\n");

    out << "noise sweep in " << result.directory.string() << '\n';
    out << std::setw(8) << "p" << std::setw(12) << "jitter" << std::setw(12) << "loss_std"
        << std::setw(12) << "initial" << std::setw(12) << "final" << "  descending\n";
    for (const auto &r : result.runs) {
        out << std::setw(8) << r.p << std::setw(12) << r.jitter << std::setw(12) << r.raw_std
            << std::setw(12) << r.initial_loss << std::setw(12) << r.final_loss << "  "
            << (r.descending ? "yes" : "no") << '\n';
    }
    return result;
}

namespace {

// Turns "--key value" and "--key=value" extras into overrides.
std::map<std::string, std::string> parse_extras(const std::vector<std::string> &extras) {
    std::map<std::string, std::string> out;
    for (std::size_t i = 0; i < extras.size(); ++i) {
        const std::string &tok = extras[i];
        if (tok.rfind("--", 0) != 0 || tok.size() == 2) {
            throw ConfigError("unexpected argument '" + tok + "'");
        }
        std::string key = tok.substr(2);
        std::string value;
        if (const auto eq = key.find('='); eq != std::string::npos) {
            value = key.substr(eq + 1);
            key.resize(eq);
        } else {
            if (i + 1 >= extras.size()) {
                throw ConfigError("option '" + tok + "' needs a value");
            }
            value = extras[++i];
        }
        std::replace(key.begin(), key.end(), '-', '_');
        out[key] = value;
    }
    return out;
}

void apply_thread_override() {
    const char *env = std::getenv("QNET_NUM_THREADS");
    if (env == nullptr || *env == '\0') {
        return;
    }
    char *end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) {
        throw ConfigError("QNET_NUM_THREADS must be a positive integer (got '" +
                          std::string(env) + "')");
    }
    omp_set_num_threads(static_cast<int>(v));
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err,
        const GradientFns &fns) {
    CLI::App app{"QNet quantum text model: train, evaluate and analyze circuits"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::string run_dir;
    std::string checkpoint;
    std::string json_path;

    const auto common = [&](CLI::App *sub) {
        sub->add_option("--config", config_path, "JSON configuration file");
        sub->add_option("--seed", seed, "random seed");
        sub->add_option("--out", out_dir, "output directory");
        sub->allow_extras();
        sub->footer("Any configuration field can be overridden with --<field> <value>.");
    };
    auto *train_cmd = app.add_subcommand("train", "train a model and persist a run directory");
    auto *eval_cmd = app.add_subcommand("eval", "evaluate a checkpoint on train and test splits");
    auto *analyze_cmd =
        app.add_subcommand("analyze", "parameter counts, depth and gate counts");
    auto *grad_cmd =
        app.add_subcommand("gradcheck", "compare adjoint, shift and finite differences");
    auto *sweep_cmd = app.add_subcommand("noise-sweep", "train once per depolarizing p");
    for (auto *sub : {train_cmd, eval_cmd, analyze_cmd, grad_cmd, sweep_cmd}) {
        common(sub);
    }
    eval_cmd->add_option("--run", run_dir, "run directory (config.json, checkpoint.json)");
    eval_cmd->add_option("--checkpoint", checkpoint, "checkpoint file");
    analyze_cmd->add_option("--json", json_path, "report path (default <out>/analysis.json)");

    std::vector<std::string> argv_store{"qnet"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char *> argv;
    for (auto &a : argv_store) {
        argv.push_back(a.data());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }

    CLI::App *sub = app.get_subcommands().front();
    RunConfig config;
    try {
        apply_thread_override();
        RunConfig base = sub == sweep_cmd ? noise_sweep_defaults() : RunConfig{};
        if (sub == eval_cmd && !run_dir.empty()) {
            base = from_json(read_json(fs::path(run_dir) / "config.json"), base);
            checkpoint = (fs::path(run_dir) / "checkpoint.json").string();
        }
        if (!config_path.empty()) {
            base = from_json(read_json(config_path), base);
        }
        config = apply_overrides(base, parse_extras(sub->remaining()));
        if (seed) {
            config.seed = *seed;
        }
        if (out_dir) {
            config.out = *out_dir;
        }
        if (sub == analyze_cmd) {
            validate(config);
        } else {
            validate_simulable(config);
        }
        if (sub == eval_cmd && checkpoint.empty()) {
            throw ConfigError("eval needs --run or --checkpoint");
        }
    } catch (const ConfigError &e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    }

    try {
        if (sub == train_cmd) {
            cmd_train(config, out);
        } else if (sub == eval_cmd) {
            const json report = cmd_eval(config, checkpoint, out);
            if (!run_dir.empty()) {
                write_text(fs::path(run_dir) / "eval.json", report.dump(2) + "\n");
            }
        } else if (sub == analyze_cmd) {
            cmd_analyze(config,
                        json_path.empty() ? fs::path(config.out) / "analysis.json"
                                          : fs::path(json_path),
                        out);
        } else if (sub == grad_cmd) {
            if (!cmd_gradcheck(config, out, fns).pass) {
                return kExitFailure;
            }
        } else {
            cmd_noise_sweep(config, out);
        }
    } catch (const ConfigError &e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitOk;
}

} // namespace qnet::cli
