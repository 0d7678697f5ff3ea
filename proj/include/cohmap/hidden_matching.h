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

// Coherent-state protocol for the Hidden Matching problem.
//
// Alice holds x in {0,1}^n and sends n coherent states with amplitudes
// (-1)^{x_i} alpha / sqrt(n). Bob holds a perfect matching M of {1..n};
// for each pair (i, j) he interferes modes i and j on a balanced beam
// splitter. The "+" output carries (a_i + a_j)/sqrt2 and is vacuum unless
// x_i == x_j; the "-" output carries (a_i - a_j)/sqrt2 and is vacuum unless
// x_i != x_j. Any click therefore names a pair and its parity x_i xor x_j
// with certainty, and no detector clicks with probability e^{-|alpha|^2}.

#ifndef COHMAP_HIDDEN_MATCHING_H
#define COHMAP_HIDDEN_MATCHING_H

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cohmap/core.h"
#include "cohmap/detection.h"
#include "cohmap/mapping.h"
#include "cohmap/rng.h"
#include "cohmap/trial_stats.h"

namespace cohmap::hm {

using BitString = std::vector<std::uint8_t>;

/// Parses a string of '0' and '1'. Throws ValidationError otherwise.
BitString parse_bits(std::string_view text);
std::string format_bits(const BitString &bits);
BitString random_bits(std::size_t n, Rng &rng);

/// A perfect matching of {0, ..., n-1}, n even.
///
/// Pairs are stored canonically: (i, j) with i < j, sorted by i. Pair t
/// feeds output ports 2t ("+", parity 0) and 2t+1 ("-", parity 1).
class Matching {
   public:
    /// Throws ValidationError unless `pairs` is a perfect matching of n.
    Matching(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> pairs);

    /// Parses 1-based "i-j" pairs separated by commas, e.g. "1-6,2-5,3-4".
    static Matching parse(std::string_view text, std::size_t n);
    /// Uniformly random perfect matching.
    static Matching random(std::size_t n, Rng &rng);

    [[nodiscard]] std::size_t n() const {
        return n_;
    }
    [[nodiscard]] const std::vector<std::pair<std::size_t, std::size_t>> &pairs() const {
        return pairs_;
    }
    /// 1-based "i-j,..." in canonical order.
    [[nodiscard]] std::string to_string() const;

   private:
    std::size_t n_;
    std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

/// Alice's state: amplitude (-1)^{x_i} alpha / sqrt(n) in mode i. n >= 2.
ModeCoherentState alice_state(const BitString &x, Complex alpha);

/// Bob's network as a dense unitary. Row 2t is ((e_i + e_j)/sqrt2)^T and
/// row 2t+1 is ((e_i - e_j)/sqrt2)^T for the t-th canonical pair (i, j).
UnitaryOp bob_unitary(const Matching &m);

/// The same network applied pair by pair in O(n).
ModeCoherentState apply_bob_network(const Matching &m, const ModeCoherentState &c);

struct Conclusive {
    std::pair<std::size_t, std::size_t> pair;  ///< 0-based, i < j
    std::uint8_t parity = 0;                   ///< claimed x_i xor x_j
    std::size_t port = 0;
};

struct HMResult {
    std::optional<Conclusive> conclusive;  ///< empty when nothing clicked
    ClickPattern raw_pattern;
};

/// Interprets Bob's output clicks: the lowest clicked port decides.
std::optional<Conclusive> interpret_clicks(const ClickPattern &pattern, const Matching &m);

/// One run of the protocol with clicks drawn from `rng`.
HMResult run_trial(const BitString &x, const Matching &m, Complex alpha, Rng &rng);
HMResult run_trial(const BitString &x, const Matching &m, Complex alpha, Seed seed);

/// Exact outcome probabilities, by enumerating all 2^n click patterns of
/// Bob's detectors.
struct ExactOutcome {
    double p_correct = 0.0;
    double p_wrong = 0.0;
    double p_inconclusive = 0.0;
    /// Patterns with positive probability that yield a wrong answer.
    std::uint64_t wrong_patterns = 0;
};

inline constexpr std::size_t kMaxExactModes = 20;

/// Throws EnumerationTooLarge above kMaxExactModes.
ExactOutcome exact_outcome(const BitString &x, const Matching &m, Complex alpha);

struct ExperimentConfig {
    std::size_t n = 0;
    /// Fixed inputs; when empty, a fresh uniform one is drawn per trial.
    std::optional<BitString> x;
    std::optional<Matching> matching;
    Complex alpha = 0.0;
    std::uint64_t trials = 0;
};

struct ExperimentResult {
    TrialStats stats;
    /// e^{-|alpha|^2}.
    double inconclusive_expected = 0.0;
};

/// Runs trials seed.trial(0 .. trials-1) in parallel. Bit-identical to the
/// serial reference.
ExperimentResult run_experiment(const ExperimentConfig &config, Seed seed);
ExperimentResult run_experiment_serial(const ExperimentConfig &config, Seed seed);

}  // namespace cohmap::hm

#endif  // COHMAP_HIDDEN_MATCHING_H
