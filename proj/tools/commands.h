// Copyright 2026 The cohmap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COHMAP_TOOLS_COMMANDS_H
#define COHMAP_TOOLS_COMMANDS_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cohmap/commx.h"
#include "qds_config.h"
#include "report.h"

namespace cohmap::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitInvariant = 2;

/// A report and the exit status it implies. A status of kExitInvariant
/// means the report shows a result the ideal model forbids.
struct CommandResult {
    Report report;
    int status = kExitOk;
    std::string diagnostic;
};

struct OverlapSweepParams {
    std::vector<double> mu = {0.25, 0.5, 1.0, 2.0, 4.0, 10.0};
    /// Explicit grid; when empty, k * delta_step for k = 0 .. 1/delta_step.
    std::vector<double> deltas;
    double delta_step = 0.05;
};

CommandResult overlap_sweep(const OverlapSweepParams &p);

struct HiddenMatchingParams {
    std::size_t n = 6;
    std::optional<std::string> x;
    std::optional<std::string> matching;
    double alpha_sq = 3.0;
    std::uint64_t trials = 100'000;
    std::uint64_t seed = 0;
};

CommandResult hidden_matching(const HiddenMatchingParams &p);

enum class FormSelection { kStated, kNormalized, kBoth };

struct ThmCheckParams {
    std::uint64_t seed = 0;
    /// Monte Carlo trials per holding success-bound instance.
    std::uint64_t trials = 10'000;
    std::uint64_t lecam_instances = 100;
    std::size_t lecam_max_modes = 50;
    double lecam_max_p = 0.3;
    std::size_t modes = 4096;
    std::vector<double> mu = {0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0};
    std::vector<double> p_s = {0.9, 0.99};
    double epsilon = 0.45;
    FormSelection form = FormSelection::kBoth;
    double dim_mu = 1.0;
    std::uint64_t dim_delta = 5;
    unsigned log2d_min = 4;
    unsigned log2d_max = 14;
};

CommandResult thm_check(const ThmCheckParams &p);

struct DimBoundParams {
    double mu = 1.0;
    std::uint64_t delta = 5;
    /// Explicit dimensions; when empty, 2^log2d_min .. 2^log2d_max.
    std::vector<std::size_t> d;
    unsigned log2d_min = 4;
    unsigned log2d_max = 14;
};

CommandResult dim_bound(const DimBoundParams &p);

/// Emits every stage of every run; run i uses seed.trial(i).
CommandResult qds_transcript(const QdsRunConfig &config);

/// Outcome probabilities for the success-bound instances of thm-check:
/// S0 = the first d/2 modes with mass p_s, S1 the rest, per-mode weights
/// 1 + u/2 with u uniform, normalized within each half.
std::vector<double> split_mass_distribution(std::size_t d, double p_s, Rng &rng);

}  // namespace cohmap::cli

#endif  // COHMAP_TOOLS_COMMANDS_H
