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

// Threshold detection and photon-number statistics of coherent product
// states.
//
// Detectors are ideal: unit efficiency, no dark counts. The no-click
// element is the vacuum projector |0><0| and the click element is its
// complement sum_{n>=1} |n><n|.

#ifndef COHMAP_DETECTION_H
#define COHMAP_DETECTION_H

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "cohmap/core.h"
#include "cohmap/mapping.h"
#include "cohmap/rng.h"

namespace cohmap {

/// One threshold-detector outcome per mode (true = click).
struct ClickPattern {
    std::vector<bool> clicks;

    [[nodiscard]] std::size_t size() const {
        return clicks.size();
    }
    [[nodiscard]] bool operator[](std::size_t k) const {
        return clicks[k];
    }
    [[nodiscard]] std::size_t count() const;
    [[nodiscard]] bool any() const;

    friend bool operator==(const ClickPattern &, const ClickPattern &) = default;
};

/// Photons per mode. total == sum(counts).
struct PhotonRecord {
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;

    static PhotonRecord from_counts(std::vector<std::uint64_t> counts);

    friend auto operator<=>(const PhotonRecord &, const PhotonRecord &) = default;
};

/// p_k = 1 - exp(-|amplitude_k|^2).
Eigen::VectorXd click_probabilities(const ModeCoherentState &c);

/// Independent Bernoulli(p_k) per mode, drawn in mode order.
ClickPattern sample_click_pattern(const ModeCoherentState &c, Rng &rng);
ClickPattern sample_click_pattern(const ModeCoherentState &c, Seed seed);

/// Same, from precomputed click probabilities.
ClickPattern sample_clicks(std::span<const double> probs, Rng &rng);

/// Independent Poisson(|amplitude_k|^2) per mode.
PhotonRecord sample_photon_numbers(const ModeCoherentState &c, Rng &rng);
PhotonRecord sample_photon_numbers(const ModeCoherentState &c, Seed seed);

/// Exact probability of `record` under the product of per-mode Poisson
/// laws of `c`.
double photon_record_probability(const ModeCoherentState &c, const PhotonRecord &record);

/// e^{-mu} mu^n / n!, with Poisson(0) the point mass at 0.
double poisson_pmf(std::uint64_t n, double mu);

/// Caps the number of records multinomial_oracle will enumerate.
inline constexpr std::uint64_t kMaxMultinomialRecords = 2'000'000;

/// The photon-number law of n photons in mode a_psi: over every way of
/// placing n photons in d modes, n! / (n_1! ... n_d!) prod_k |lambda_k|^{2 n_k}.
/// This is also the tally law of n independent canonical-basis measurements
/// of |psi>. Throws EnumerationTooLarge above kMaxMultinomialRecords.
std::map<PhotonRecord, double> multinomial_oracle(const PureState &s, std::uint64_t n);

/// Draws N ~ Poisson(mu), then N independent categorical outcomes with
/// probabilities |lambda_k|^2, and tallies them per mode.
PhotonRecord poissonized_repetition_oracle(const PureState &s, double mu, Rng &rng);
PhotonRecord poissonized_repetition_oracle(const PureState &s, double mu, Seed seed);

}  // namespace cohmap

#endif  // COHMAP_DETECTION_H
