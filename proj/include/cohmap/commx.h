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

// Bounded-error communication complexity with coherent states.
//
// The two answer subspaces of a qubit protocol become two disjoint sets of
// modes S0 and S1. The coherent-state protocol counts clicks in each set
// and answers with the set that clicked more. The click counts C0, C1 are
// Poisson-binomial; this header has their exact laws, the Poisson
// approximation bound on them, and the sufficient condition under which
// the coherent-state protocol keeps the qubit protocol's error bound.

#ifndef COHMAP_COMMX_H
#define COHMAP_COMMX_H

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "cohmap/detection.h"
#include "cohmap/mapping.h"
#include "cohmap/rng.h"
#include "cohmap/trial_stats.h"

namespace cohmap {

/// Disjoint mode sets for the answers 0 and 1 (0-based indices).
class OutcomePartition {
   public:
    /// Throws ValidationError on duplicate or shared indices.
    OutcomePartition(std::vector<std::size_t> s0, std::vector<std::size_t> s1);

    /// S0 = [0, split), S1 = [split, d).
    static OutcomePartition split_at(std::size_t split, std::size_t d);

    [[nodiscard]] const std::vector<std::size_t> &s0() const {
        return s0_;
    }
    [[nodiscard]] const std::vector<std::size_t> &s1() const {
        return s1_;
    }
    [[nodiscard]] const std::vector<std::size_t> &set(int b) const {
        return b == 0 ? s0_ : s1_;
    }
    /// Throws DimensionMismatch if any index is >= d.
    void check_fits(std::size_t d) const;

   private:
    std::vector<std::size_t> s0_;
    std::vector<std::size_t> s1_;
};

enum class Decision { kZero, kOne, kTie };

struct DecisionResult {
    Decision outcome = Decision::kTie;
    std::size_t c0 = 0;
    std::size_t c1 = 0;
};

/// Answer 0 if S0 clicked strictly more than S1, 1 if the reverse, tie
/// otherwise. Resolving ties is left to the caller.
DecisionResult decide(const ClickPattern &pattern, const OutcomePartition &partition);

/// mu_b = E[C_b] = sum_{k in S_b} p_k and tau_b = sum_{k in S_b} p_k^2.
struct ClickCountStats {
    double mu0 = 0.0;
    double mu1 = 0.0;
    double tau0 = 0.0;
    double tau1 = 0.0;
    double tau = 0.0;
};

ClickCountStats click_count_stats(const ModeCoherentState &c, const OutcomePartition &partition);
ClickCountStats click_count_stats(std::span<const double> click_probs, const OutcomePartition &partition);

inline constexpr std::size_t kMaxPoissonBinomialTerms = 10'000;

/// Exact pmf of a sum of independent Bernoulli(p_k) on {0, ..., n}, by
/// sequential convolution. Throws EnumerationTooLarge above
/// kMaxPoissonBinomialTerms and ValidationError for p outside [0, 1].
std::vector<double> poisson_binomial_exact(std::span<const double> probs);

/// |Pr(C in A) - Pr(L in A)| for C Poisson-binomial and L Poisson of the
/// same mean, against min(1, 1/mu) tau.
struct LeCamCheck {
    double mu = 0.0;
    double tau = 0.0;
    double lhs = 0.0;
    double bound = 0.0;
    bool holds = false;
};

/// `event` is a set of non-negative integers. holds == lhs <= bound + 1e-12.
LeCamCheck lecam_bound_check(std::span<const double> probs, std::span<const std::uint64_t> event);

/// The event {k : Pr(C = k) > Pr(L = k)}, which attains the total
/// variation distance between C and L.
std::vector<std::uint64_t> lecam_worst_case_event(std::span<const double> probs);

/// min(1, 1/m), defined as 1 at m == 0.
double min_one_inverse(double m);

/// How the first term of the success condition is evaluated.
enum class FirstTermForm {
    /// 2 e^{-P_s mu} (2 e P_s mu)^{mu/2}, the condition as usually written.
    kAsStated,
    /// 2 e^{-P_s mu} (2 e P_s)^{mu/2}: the Poisson tail term
    /// e^{-mu_0} (2 e mu_0 / mu)^{mu/2} with mu_0 replaced by P_s mu.
    kNormalized,
};

/// Click probabilities 1 - exp(-mu p_k) of the coherent-state version of a
/// protocol whose qubit outcome probabilities are p_k.
std::vector<double> coherent_click_probabilities(double mu, std::span<const double> probs_qubit);

struct Theorem3Report {
    double mu = 0.0;
    double p_s = 0.0;
    double epsilon = 0.0;
    FirstTermForm form = FirstTermForm::kAsStated;
    ClickCountStats stats;
    double first_term = 0.0;
    /// max_b min(1, 1/mu_b) * tau.
    double tau_term = 0.0;
    double lhs = 0.0;
    bool holds = false;
    /// 1 - first_term - tau_term; the guaranteed success probability.
    double p_alpha_lower_bound = 0.0;
};

/// Evaluates the sufficient condition first_term + tau_term <= epsilon for
/// the coherent-state protocol to succeed with probability above 1 - eps.
///
/// Requires 1/2 < p_s <= 1, 0 < eps < 1/2, mu >= 0, probs_qubit summing to
/// 1, and p_s equal to the qubit probability mass on S0 (S0 is the correct
/// answer). Throws ValidationError otherwise.
Theorem3Report theorem3_check(double p_s, double epsilon, double mu, std::span<const double> probs_qubit,
                              const OutcomePartition &partition,
                              FirstTermForm form = FirstTermForm::kAsStated);

/// Exact answer probabilities for independent click counts on S0 and S1.
struct ExactDecisionProbabilities {
    double p_zero = 0.0;  ///< Pr(C0 > C1)
    double p_one = 0.0;   ///< Pr(C1 > C0)
    double p_tie = 0.0;   ///< Pr(C0 == C1)
    /// Pr(C0 > mu/2) * Pr(C1 < mu/2), the product the success bound starts from.
    double threshold_product = 0.0;
};

ExactDecisionProbabilities exact_decision_probabilities(std::span<const double> click_probs,
                                                        const OutcomePartition &partition, double mu);

enum class TiePolicy {
    /// Ties (including no clicks at all) count as failures.
    kFailure,
    /// Ties are resolved by a fair coin from a stream derived from the trial seed.
    kCoinFlip,
};

/// Produces one trial's click pattern from that trial's generator. Must be
/// safe to call concurrently.
using TrialGenerator = std::function<ClickPattern(Rng &)>;

/// Independent Bernoulli(p_k) clicks in every mode.
TrialGenerator product_bernoulli_generator(std::vector<double> click_probs);

struct SuccessEstimate {
    double p_hat = 0.0;
    double ci95 = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    std::uint64_t ties = 0;

    friend bool operator==(const SuccessEstimate &, const SuccessEstimate &) = default;
};

/// Runs `trials` trials with seeds seed.trial(i), applies decide, and counts
/// how often the decision equals `correct`. Trials run in parallel; the
/// result is bit-identical to estimate_success_probability_serial.
SuccessEstimate estimate_success_probability(const TrialGenerator &generator, const OutcomePartition &partition,
                                             std::uint64_t trials, Seed seed,
                                             Decision correct = Decision::kZero,
                                             TiePolicy ties = TiePolicy::kFailure);

/// Single-threaded reference.
SuccessEstimate estimate_success_probability_serial(const TrialGenerator &generator,
                                                    const OutcomePartition &partition, std::uint64_t trials,
                                                    Seed seed, Decision correct = Decision::kZero,
                                                    TiePolicy ties = TiePolicy::kFailure);

}  // namespace cohmap

#endif  // COHMAP_COMMX_H
