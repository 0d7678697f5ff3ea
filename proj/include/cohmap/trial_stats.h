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

#ifndef COHMAP_TRIAL_STATS_H
#define COHMAP_TRIAL_STATS_H

#include <cstdint>

namespace cohmap {

/// A success frequency with its Wald 95% half-width.
struct Proportion {
    double p_hat = 0.0;
    double ci95 = 0.0;
};

Proportion wald_interval(std::uint64_t successes, std::uint64_t trials);

/// Standard deviation of a binomial frequency with true rate p.
double binomial_sigma(double p, std::uint64_t trials);

/// True when `observed` is within `k` binomial standard deviations of the
/// expected rate.
bool within_sigmas(double observed, double expected, std::uint64_t trials, double k = 3.0);

/// Aggregated outcome classes of a batch of protocol trials.
struct TrialStats {
    std::uint64_t trials = 0;
    std::uint64_t conclusive_correct = 0;
    std::uint64_t conclusive_wrong = 0;
    std::uint64_t inconclusive = 0;

    [[nodiscard]] double inconclusive_rate() const;
    [[nodiscard]] Proportion inconclusive_interval() const;

    TrialStats &operator+=(const TrialStats &o);
    friend bool operator==(const TrialStats &, const TrialStats &) = default;
};

}  // namespace cohmap

#endif  // COHMAP_TRIAL_STATS_H
