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
#pragma once

#include "qnet/circuit/circuit.hpp"
#include "qnet/cli/run_config.hpp"
#include "qnet/sim/state_vector.hpp"

#include <json.hpp>

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace qnet::cli {

/// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;

/// Creates `<out>/<YYYYMMDDTHHMMSS>-s<seed><suffix>` (UTC), adding a counter on collision.
std::filesystem::path make_run_directory(const RunConfig &c, const std::string &suffix = "");

/// Trains and persists config.json, circuit.txt, metrics.jsonl and
/// checkpoint.json. Returns the run directory.
std::filesystem::path cmd_train(const RunConfig &c, std::ostream &out);

/// Evaluates a checkpoint on the train and test splits rebuilt from `c`.
nlohmann::json cmd_eval(const RunConfig &c, const std::filesystem::path &checkpoint,
                        std::ostream &out);

/// Parameter counts, depths and gate counts for the (n, d) grid given by
/// sweep_n x sweep_d (falling back to n and d). Pure function of the config.
nlohmann::json analyze_report(const RunConfig &c);
nlohmann::json cmd_analyze(const RunConfig &c, const std::filesystem::path &json_path,
                           std::ostream &out);

using GradientFn = std::function<std::vector<double>(
    const circuit::Circuit &, std::span<const double>, const sim::StateVector &,
    std::span<const double>)>;

struct GradientFns {
    GradientFn adjoint;
    GradientFn parameter_shift;
    GradientFn finite_difference;
};

GradientFns default_gradient_fns();

inline constexpr double kGradcheckTolerance = 1e-6;

struct GradcheckReport {
    double max_deviation{0.0};
    std::size_t worst_index{0};
    std::string worst_pair;
    double unused_gradient{0.0}; ///< largest |gradient| at a slot no gate reads
    bool pass{false};
};

/// Random QNet instances from `c` (n*d <= 8), three gradient methods compared
/// pairwise on each.
GradcheckReport cmd_gradcheck(const RunConfig &c, std::ostream &out,
                              const GradientFns &fns = default_gradient_fns());

/// Standard deviation of the residuals around a least-squares line.
double loss_jitter(std::span<const double> losses);
/// Mean of the last ten losses is below the mean of the first ten.
bool is_descending(std::span<const double> losses);

struct SweepRun {
    double p{0.0};
    std::vector<double> losses;
    double jitter{0.0};
    double raw_std{0.0};
    double initial_loss{0.0}; ///< mean of the first ten steps
    double final_loss{0.0};   ///< mean of the last ten steps
    bool descending{false};
};

struct SweepResult {
    std::filesystem::path directory;
    std::vector<SweepRun> runs;
};

/// One training run per p with a shared seed; writes metrics_p<p>.jsonl
/// files and summary.json into a fresh run directory.
SweepResult cmd_noise_sweep(const RunConfig &c, std::ostream &out);

/// Parses `args` (without the program name) and dispatches. Returns the exit code.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err,
        const GradientFns &fns = default_gradient_fns());

} // namespace qnet::cli
