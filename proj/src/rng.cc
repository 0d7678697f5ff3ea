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

#include "cohmap/rng.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace cohmap {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Seed Seed::derive(std::uint64_t tag) const {
    return Seed{mix64(master_seed ^ mix64(tag ^ 0x5eedc0ffee123457ULL)), trial_index};
}

Rng::Rng(Seed seed) : engine_(mix64(seed.master_seed) ^ mix64(mix64(seed.trial_index) + 1)) {
}

double Rng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t n) {
    // Rejection sampling keeps the result exactly uniform.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t r;
    do {
        r = engine_();
    } while (r >= limit);
    return r % n;
}

std::uint64_t Rng::poisson(double mean) {
    if (!(mean > 0.0)) {
        return 0;
    }
    constexpr double kChunk = 30.0;
    std::uint64_t total = 0;
    while (mean >= kChunk) {
        total += poisson(kChunk / 2);
        mean -= kChunk / 2;
    }
    const double u = uniform();
    double p = std::exp(-mean);
    double cdf = p;
    std::uint64_t k = 0;
    // The cap guards against a cdf that rounds to just below 1.
    while (u >= cdf && k < 1000) {
        ++k;
        p *= mean / static_cast<double>(k);
        cdf += p;
    }
    return total + k;
}

double Rng::normal() {
    double u1;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::size_t Rng::categorical(std::span<const double> cumulative) {
    const double u = uniform() * cumulative.back();
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const auto k = static_cast<std::size_t>(it - cumulative.begin());
    return std::min(k, cumulative.size() - 1);
}

}  // namespace cohmap
