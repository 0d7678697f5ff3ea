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

// Quantum digital signatures with coherent states and beam splitters.
//
// Distribution stage:
//   1. Alice draws private keys k0, k1 and sends each of Bob and Charlie
//      the states (-1)^{k_b,i} alpha/sqrt(n), i = 1..n, for b = 0, 1.
//   2. Each recipient splits every pulse on a balanced beam splitter into
//      two copies of amplitude alpha/sqrt(2n).
//   3. The first copy goes through unambiguous discrimination of |+beta>
//      vs |-beta>, beta = |alpha|/sqrt(2n); conclusive results are kept
//      in a classical record.
//   4. The second copies of Bob and Charlie meet on a beam splitter in
//      Bob's lab. Clicks in the "Not Equal" port above a fraction f of all
//      clicks abort the protocol.
// Messaging stage:
//   5. Alice reveals (b, k_b). Bob accepts if the mismatch fraction between
//      k_b and his record is below s_a.
//   6. Bob forwards (b, k_b); Charlie accepts below s_v > s_a.
//
// The model is ideal: lossless channels, perfect detectors, a shared phase
// reference.

#ifndef COHMAP_QDS_H
#define COHMAP_QDS_H

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cohmap/hidden_matching.h"
#include "cohmap/mapping.h"
#include "cohmap/rng.h"

namespace cohmap::qds {

using BitString = hm::BitString;

struct PrivateKeys {
    BitString k0;
    BitString k1;

    [[nodiscard]] const BitString &key(int b) const {
        return b == 0 ? k0 : k1;
    }
};

/// Two independent uniform n-bit keys. n >= 1.
PrivateKeys keygen(std::size_t n, Rng &rng);
PrivateKeys keygen(std::size_t n, Seed seed);

/// Amplitude (-1)^{k_i} alpha / sqrt(n) in mode i, n = |k|.
ModeCoherentState signature_state(const BitString &k, Complex alpha);

/// Balanced beam splitter with vacuum in the other input: two copies with
/// every amplitude divided by sqrt2.
std::pair<ModeCoherentState, ModeCoherentState> split(const ModeCoherentState &c);

enum class UsdOutcome : std::uint8_t { kInconclusive, kPlus, kMinus };

struct UsdRecord {
    std::vector<UsdOutcome> outcomes;

    [[nodiscard]] std::size_t unambiguous() const;
};

struct UsdProbabilities {
    double plus = 0.0;
    double minus = 0.0;
    double inconclusive = 1.0;
};

/// Outcome law of the optimal unambiguous discrimination of |+beta> vs
/// |-beta> applied to the coherent state |gamma>.
///
/// For gamma == +-beta the conclusive rate is 1 - e^{-2 beta^2} and the
/// answer is always right. Any other gamma is projected onto the same
/// measurement: with s = e^{-2 beta^2}, the even/odd basis
/// |e> ~ |beta> + |-beta>, |o> ~ |beta> - |-beta>, c_e = sqrt((1+s)/2),
/// c_o = sqrt((1-s)/2), the conclusive elements are
/// E_+- = |v_+-><v_+-| / (1+s) with v_+- = c_o |e> +- c_e |o>.
UsdProbabilities usd_probabilities(Complex gamma, double beta);

/// Per-mode discrimination against references +-beta.
UsdRecord usd_measure(const ModeCoherentState &c, double beta, Rng &rng);
UsdRecord usd_measure(const ModeCoherentState &c, double beta, Seed seed);

struct EqualityTestReport {
    std::uint64_t neq_clicks = 0;
    std::uint64_t total_clicks = 0;
    /// neq_clicks / total_clicks, 0 when nothing clicked.
    double neq_fraction = 0.0;
    bool aborted = false;
};

/// Interferes the two states mode by mode, (u + w)/sqrt2 to "Equal" and
/// (u - w)/sqrt2 to "Not Equal", and samples both detectors. Aborts when
/// neq_fraction > f.
EqualityTestReport equality_test(const ModeCoherentState &b, const ModeCoherentState &c, double f, Rng &rng);
EqualityTestReport equality_test(const ModeCoherentState &b, const ModeCoherentState &c, double f, Seed seed);

enum class Role { kAuthentication, kVerification };

std::string to_string(Role role);

struct VerificationVerdict {
    std::uint64_t mismatches = 0;
    /// Unambiguous positions compared.
    std::uint64_t tested = 0;
    /// mismatches / max(tested, 1).
    double fraction = 0.0;
    double threshold = 0.0;
    bool accept = false;
    Role role = Role::kAuthentication;
};

/// Counts unambiguous positions whose sign disagrees with (-1)^{key_i} and
/// accepts when the mismatch fraction is strictly below `threshold`.
VerificationVerdict verify_message(const BitString &revealed_key, const UsdRecord &record, double threshold,
                                   Role role);

struct TamperModel {
    enum class Kind {
        kNone,
        /// The revealed key reaching Bob has round(fraction * n) bits flipped.
        kFlipRevealed,
        /// Alice sends Charlie states whose keys differ from Bob's in
        /// round(fraction * n) positions, for both keys.
        kRepudiation,
    };
    Kind kind = Kind::kNone;
    double fraction = 0.0;
};

std::string to_string(TamperModel::Kind kind);
/// "none", "flip_revealed", "repudiation". Throws ValidationError.
TamperModel::Kind parse_tamper_kind(const std::string &name);

struct QdsConfig {
    std::size_t n = 512;
    double alpha_sq = 9.0;
    double f = 0.01;
    double s_a = 0.02;
    double s_v = 0.05;
    int message_bit = 0;
    TamperModel tamper;

    /// Throws ValidationError unless n >= 1, alpha_sq >= 0, 0 < f < 1,
    /// 0 <= s_a < s_v < 1, message_bit in {0, 1}, and the tamper fraction
    /// lies in [0, 1].
    void validate() const;
};

/// One structured transcript entry. Fields that do not apply to a stage
/// are -1 (integers) or NaN (reals).
struct StageRecord {
    std::string stage;
    std::string party;
    int key_bit = -1;
    std::int64_t tested = -1;
    std::int64_t count = -1;
    double value = std::numeric_limits<double>::quiet_NaN();
    std::string result;
};

struct QdsRunResult {
    std::vector<StageRecord> transcript;
    bool aborted = false;
    std::optional<VerificationVerdict> bob;
    std::optional<VerificationVerdict> charlie;
    /// Unambiguous positions in the records of both recipients, both keys.
    std::uint64_t unambiguous = 0;
    /// Modes measured by USD (4n).
    std::uint64_t usd_modes = 0;
    /// Unambiguous outcomes that contradict the sign Alice actually sent.
    std::uint64_t usd_errors = 0;
};

/// Executes the six steps for one run with all randomness from `seed`.
QdsRunResult run_qds(const QdsConfig &config, Seed seed);

struct QdsBatchSummary {
    std::uint64_t runs = 0;
    std::uint64_t aborted = 0;
    std::uint64_t bob_accept = 0;
    std::uint64_t charlie_accept = 0;
    std::uint64_t both_accept = 0;
    std::uint64_t mismatches = 0;
    std::uint64_t unambiguous = 0;
    std::uint64_t usd_modes = 0;
    std::uint64_t usd_errors = 0;

    friend bool operator==(const QdsBatchSummary &, const QdsBatchSummary &) = default;
};

/// Runs seed.trial(0 .. runs-1) in parallel; bit-identical to the serial
/// reference.
QdsBatchSummary run_qds_batch(const QdsConfig &config, std::uint64_t runs, Seed seed);
QdsBatchSummary run_qds_batch_serial(const QdsConfig &config, std::uint64_t runs, Seed seed);

}  // namespace cohmap::qds

#endif  // COHMAP_QDS_H
