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

#include "cohmap/trial_stats.h"

#include <cmath>

namespace cohmap {

Proportion wald_interval(std::uint64_t successes, std::uint64_t trials) {
    if (trials == 0) {
        return {};
    }
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    return {p, 1.96 * std::sqrt(p * (1.0 - p) / n)};
}

double binomial_sigma(double p, std::uint64_t trials) {
    if (trials == 0) {
        return 0.0;
    }
    return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

bool within_sigmas(double observed, double expected, std::uint64_t trials, double k) {
    return std::abs(observed - expected) <= k * binomial_sigma(expected, trials);
}

double TrialStats::inconclusive_rate() const {
    return trials == 0 ? 0.0 : static_cast<double>(inconclusive) / static_cast<double>(trials);
}

Proportion TrialStats::inconclusive_interval() const {
    return wald_interval(inconclusive, trials);
}

TrialStats &TrialStats::operator+=(const TrialStats &o) {
    trials += o.trials;
    conclusive_correct += o.conclusive_correct;
    conclusive_wrong += o.conclusive_wrong;
    inconclusive += o.inconclusive;
    return *this;
}

}  // namespace cohmap
