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

#ifndef COHMAP_RNG_H
#define COHMAP_RNG_H

#include <cstdint>
#include <random>
#include <span>

namespace cohmap {

/// Identifies one reproducible random stream. Every draw made inside a trial
/// is a function of (master_seed, trial_index) alone, so trials can run in
/// any order or on any thread and produce the same bits.
struct Seed {
    std::uint64_t master_seed = 0;
    std::uint64_t trial_index = 0;

    /// Seed for trial `index` under the same master seed.
    [[nodiscard]] Seed trial(std::uint64_t index) const {
        return Seed{master_seed, index};
    }

    /// A stream independent of this one, keyed by `tag`. Used to give
    /// auxiliary randomness (tie-breaking coins, sub-stages) its own stream.
    [[nodiscard]] Seed derive(std::uint64_t tag) const;

    friend bool operator==(const Seed &, const Seed &) = default;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Deterministic generator for one Seed.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Distributions are implemented here rather than taken from
/// <random> because the standard leaves their algorithms unspecified.
class Rng {
   public:
    explicit Rng(Seed seed);

    std::uint64_t next_u64() {
        return engine_();
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();

    bool bernoulli(double p) {
        return uniform() < p;
    }

    bool bit() {
        return (engine_() >> 63) != 0;
    }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n);

    /// Poisson(mean) by sequential inversion. Means of 30 or more are split
    /// into a sum of independent Poisson draws of mean below 30.
    std::uint64_t poisson(double mean);

    /// Standard normal (Box-Muller, one value per call).
    double normal();

    /// Index drawn from a table of cumulative weights; the last entry is the
    /// total weight.
    std::size_t categorical(std::span<const double> cumulative);

   private:
    std::mt19937_64 engine_;
};

}  // namespace cohmap

#endif  // COHMAP_RNG_H
