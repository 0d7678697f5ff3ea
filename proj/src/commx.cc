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

#include "cohmap/commx.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

#include "cohmap/errors.h"

namespace cohmap {

namespace {

constexpr std::uint64_t kTieCoinTag = 0x7469652d636f696eULL;

std::vector<double> gather(std::span<const double> probs, const std::vector<std::size_t> &idx) {
    std::vector<double> out;
    out.reserve(idx.size());
    for (std::size_t k : idx) {
        out.push_back(probs[k]);
    }
    return out;
}

}  // namespace

OutcomePartition::OutcomePartition(std::vector<std::size_t> s0, std::vector<std::size_t> s1)
    : s0_(std::move(s0)), s1_(std::move(s1)) {
    std::set<std::size_t> seen;
    for (const auto *set : {&s0_, &s1_}) {
        for (std::size_t k : *set) {
            if (!seen.insert(k).second) {
                throw ValidationError("OutcomePartition: mode " + std::to_string(k) +
                                      " appears more than once");
            }
        }
    }
}

OutcomePartition OutcomePartition::split_at(std::size_t split, std::size_t d) {
    if (split > d) {
        throw ValidationError("OutcomePartition::split_at: split beyond dimension");
    }
    std::vector<std::size_t> s0(split);
    std::vector<std::size_t> s1(d - split);
    std::iota(s0.begin(), s0.end(), std::size_t{0});
    std::iota(s1.begin(), s1.end(), split);
    return OutcomePartition(std::move(s0), std::move(s1));
}

void OutcomePartition::check_fits(std::size_t d) const {
    for (const auto *set : {&s0_, &s1_}) {
        for (std::size_t k : *set) {
            if (k >= d) {
                throw DimensionMismatch("OutcomePartition: mode index " + std::to_string(k) + " out of range",
                                        d, k + 1);
            }
        }
    }
}

DecisionResult decide(const ClickPattern &pattern, const OutcomePartition &partition) {
    partition.check_fits(pattern.size());
    DecisionResult r;
    for (std::size_t k : partition.s0()) {
        r.c0 += pattern[k] ? 1 : 0;
    }
    for (std::size_t k : partition.s1()) {
        r.c1 += pattern[k] ? 1 : 0;
    }
    r.outcome = r.c0 > r.c1 ? Decision::kZero : (r.c1 > r.c0 ? Decision::kOne : Decision::kTie);
    return r;
}

ClickCountStats click_count_stats(std::span<const double> click_probs, const OutcomePartition &partition) {
    partition.check_fits(click_probs.size());
    ClickCountStats s;
    for (std::size_t k : partition.s0()) {
        s.mu0 += click_probs[k];
        s.tau0 += click_probs[k] * click_probs[k];
    }
    for (std::size_t k : partition.s1()) {
        s.mu1 += click_probs[k];
        s.tau1 += click_probs[k] * click_probs[k];
    }
    s.tau = s.tau0 + s.tau1;
    return s;
}

ClickCountStats click_count_stats(const ModeCoherentState &c, const OutcomePartition &partition) {
    const Eigen::VectorXd p = click_probabilities(c);
    return click_count_stats(std::span<const double>(p.data(), static_cast<std::size_t>(p.size())), partition);
}

std::vector<double> poisson_binomial_exact(std::span<const double> probs) {
    if (probs.size() > kMaxPoissonBinomialTerms) {
        throw EnumerationTooLarge("poisson_binomial_exact: " + std::to_string(probs.size()) +
                                  " terms exceeds the cap of " + std::to_string(kMaxPoissonBinomialTerms));
    }
    std::vector<double> pmf(probs.size() + 1, 0.0);
    pmf[0] = 1.0;
    for (std::size_t j = 0; j < probs.size(); ++j) {
        const double p = probs[j];
        if (!(p >= 0.0 && p <= 1.0)) {
            throw ValidationError("poisson_binomial_exact: probability outside [0, 1]");
        }
        // In place, high to low, so pmf[k - 1] is still the previous row.
        for (std::size_t k = j + 1; k > 0; --k) {
            pmf[k] = pmf[k] * (1.0 - p) + pmf[k - 1] * p;
        }
        pmf[0] *= 1.0 - p;
    }
    return pmf;
}

double min_one_inverse(double m) {
    return m <= 1.0 ? 1.0 : 1.0 / m;
}

LeCamCheck lecam_bound_check(std::span<const double> probs, std::span<const std::uint64_t> event) {
    const std::vector<double> pmf = poisson_binomial_exact(probs);
    LeCamCheck r;
    for (double p : probs) {
        r.mu += p;
        r.tau += p * p;
    }
    const std::set<std::uint64_t> unique(event.begin(), event.end());
    double pc = 0.0;
    double pl = 0.0;
    for (std::uint64_t a : unique) {
        if (a < pmf.size()) {
            pc += pmf[a];
        }
        pl += poisson_pmf(a, r.mu);
    }
    r.lhs = std::abs(pc - pl);
    r.bound = min_one_inverse(r.mu) * r.tau;
    r.holds = r.lhs <= r.bound + 1e-12;
    return r;
}

std::vector<std::uint64_t> lecam_worst_case_event(std::span<const double> probs) {
    const std::vector<double> pmf = poisson_binomial_exact(probs);
    const double mu = std::accumulate(probs.begin(), probs.end(), 0.0);
    std::vector<std::uint64_t> event;
    for (std::uint64_t k = 0; k < pmf.size(); ++k) {
        if (pmf[k] > poisson_pmf(k, mu)) {
            event.push_back(k);
        }
    }
    return event;
}

std::vector<double> coherent_click_probabilities(double mu, std::span<const double> probs_qubit) {
    std::vector<double> out(probs_qubit.size());
    std::transform(probs_qubit.begin(), probs_qubit.end(), out.begin(),
                   [mu](double p) { return -std::expm1(-mu * p); });
    return out;
}

Theorem3Report theorem3_check(double p_s, double epsilon, double mu, std::span<const double> probs_qubit,
                              const OutcomePartition &partition, FirstTermForm form) {
    if (!(p_s > 0.5 && p_s <= 1.0)) {
        throw ValidationError("theorem3_check: p_s must lie in (1/2, 1]");
    }
    if (!(epsilon > 0.0 && epsilon < 0.5)) {
        throw ValidationError("theorem3_check: epsilon must lie in (0, 1/2)");
    }
    if (!(mu >= 0.0) || !std::isfinite(mu)) {
        throw ValidationError("theorem3_check: mu must be finite and non-negative");
    }
    partition.check_fits(probs_qubit.size());
    double total = 0.0;
    for (double p : probs_qubit) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw ValidationError("theorem3_check: outcome probability outside [0, 1]");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > kComposedTol) {
        throw ValidationError("theorem3_check: outcome probabilities sum to " + std::to_string(total));
    }
    double mass0 = 0.0;
    for (std::size_t k : partition.s0()) {
        mass0 += probs_qubit[k];
    }
    if (std::abs(mass0 - p_s) > kComposedTol) {
        throw ValidationError("theorem3_check: p_s = " + std::to_string(p_s) +
                              " differs from the qubit probability of S0, " + std::to_string(mass0));
    }

    Theorem3Report r;
    r.mu = mu;
    r.p_s = p_s;
    r.epsilon = epsilon;
    r.form = form;
    const std::vector<double> click = coherent_click_probabilities(mu, probs_qubit);
    r.stats = click_count_stats(click, partition);

    if (mu == 0.0) {
        r.first_term = 2.0;
    } else {
        const double base = form == FirstTermForm::kAsStated ? 2.0 * std::numbers::e * p_s * mu
                                                             : 2.0 * std::numbers::e * p_s;
        r.first_term = std::exp(std::numbers::ln2 - p_s * mu + 0.5 * mu * std::log(base));
    }
    r.tau_term = std::max(min_one_inverse(r.stats.mu0), min_one_inverse(r.stats.mu1)) * r.stats.tau;
    r.lhs = r.first_term + r.tau_term;
    r.holds = r.lhs <= epsilon;
    r.p_alpha_lower_bound = 1.0 - r.first_term - r.tau_term;
    return r;
}

ExactDecisionProbabilities exact_decision_probabilities(std::span<const double> click_probs,
                                                        const OutcomePartition &partition, double mu) {
    partition.check_fits(click_probs.size());
    const std::vector<double> pmf0 = poisson_binomial_exact(gather(click_probs, partition.s0()));
    const std::vector<double> pmf1 = poisson_binomial_exact(gather(click_probs, partition.s1()));

    // cdf1[j] = Pr(C1 < j).
    std::vector<double> cdf1(pmf1.size() + 1, 0.0);
    std::partial_sum(pmf1.begin(), pmf1.end(), cdf1.begin() + 1);

    ExactDecisionProbabilities r;
    for (std::size_t i = 0; i < pmf0.size(); ++i) {
        const std::size_t below = std::min(i, pmf1.size());
        r.p_zero += pmf0[i] * cdf1[below];
        if (i < pmf1.size()) {
            r.p_tie += pmf0[i] * pmf1[i];
        }
    }
    r.p_one = std::max(0.0, 1.0 - r.p_zero - r.p_tie);

    const double half = mu / 2.0;
    double c0_above = 0.0;
    for (std::size_t i = 0; i < pmf0.size(); ++i) {
        if (static_cast<double>(i) > half) {
            c0_above += pmf0[i];
        }
    }
    double c1_below = 0.0;
    for (std::size_t j = 0; j < pmf1.size(); ++j) {
        if (static_cast<double>(j) < half) {
            c1_below += pmf1[j];
        }
    }
    r.threshold_product = c0_above * c1_below;
    return r;
}

TrialGenerator product_bernoulli_generator(std::vector<double> click_probs) {
    return [probs = std::move(click_probs)](Rng &rng) { return sample_clicks(probs, rng); };
}

namespace {

// Outcome of trial i: 1 on success, 0 otherwise. *tie is set on a tie.
int score_trial(const TrialGenerator &generator, const OutcomePartition &partition, Seed seed, std::uint64_t i,
                Decision correct, TiePolicy ties, bool *tie) {
    Rng rng(seed.trial(i));
    const DecisionResult d = decide(generator(rng), partition);
    if (d.outcome == Decision::kTie) {
        *tie = true;
        if (ties == TiePolicy::kCoinFlip) {
            Rng coin(seed.derive(kTieCoinTag).trial(i));
            const Decision guess = coin.bit() ? Decision::kOne : Decision::kZero;
            return guess == correct ? 1 : 0;
        }
        return 0;
    }
    *tie = false;
    return d.outcome == correct ? 1 : 0;
}

SuccessEstimate finish(std::uint64_t trials, std::uint64_t successes, std::uint64_t ties) {
    SuccessEstimate e;
    const Proportion p = wald_interval(successes, trials);
    e.p_hat = p.p_hat;
    e.ci95 = p.ci95;
    e.trials = trials;
    e.successes = successes;
    e.ties = ties;
    return e;
}

void check_trials(std::uint64_t trials) {
    if (trials < 1) {
        throw ValidationError("estimate_success_probability: at least one trial is required");
    }
}

}  // namespace

SuccessEstimate estimate_success_probability_serial(const TrialGenerator &generator,
                                                    const OutcomePartition &partition, std::uint64_t trials,
                                                    Seed seed, Decision correct, TiePolicy ties) {
    check_trials(trials);
    std::uint64_t successes = 0;
    std::uint64_t tie_count = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        bool tie = false;
        successes += static_cast<std::uint64_t>(score_trial(generator, partition, seed, i, correct, ties, &tie));
        tie_count += tie ? 1 : 0;
    }
    return finish(trials, successes, tie_count);
}

SuccessEstimate estimate_success_probability(const TrialGenerator &generator, const OutcomePartition &partition,
                                             std::uint64_t trials, Seed seed, Decision correct, TiePolicy ties) {
    check_trials(trials);
    std::uint64_t successes = 0;
    std::uint64_t tie_count = 0;
    const auto n = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(static) reduction(+ : successes, tie_count)
    for (std::int64_t i = 0; i < n; ++i) {
        bool tie = false;
        successes += static_cast<std::uint64_t>(
            score_trial(generator, partition, seed, static_cast<std::uint64_t>(i), correct, ties, &tie));
        tie_count += tie ? 1 : 0;
    }
    return finish(trials, successes, tie_count);
}

}  // namespace cohmap
