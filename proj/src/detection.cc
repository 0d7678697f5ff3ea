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

#include "cohmap/detection.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cohmap/errors.h"

namespace cohmap {

std::size_t ClickPattern::count() const {
    return static_cast<std::size_t>(std::count(clicks.begin(), clicks.end(), true));
}

bool ClickPattern::any() const {
    return std::find(clicks.begin(), clicks.end(), true) != clicks.end();
}

PhotonRecord PhotonRecord::from_counts(std::vector<std::uint64_t> counts) {
    PhotonRecord r;
    r.total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    r.counts = std::move(counts);
    return r;
}

Eigen::VectorXd click_probabilities(const ModeCoherentState &c) {
    // -expm1(-x) keeps full relative precision for faint modes.
    return c.mode_mean_photons().unaryExpr([](double m) { return -std::expm1(-m); });
}

ClickPattern sample_clicks(std::span<const double> probs, Rng &rng) {
    ClickPattern out;
    out.clicks.resize(probs.size());
    for (std::size_t k = 0; k < probs.size(); ++k) {
        out.clicks[k] = rng.bernoulli(probs[k]);
    }
    return out;
}

ClickPattern sample_click_pattern(const ModeCoherentState &c, Rng &rng) {
    const Eigen::VectorXd p = click_probabilities(c);
    return sample_clicks(std::span<const double>(p.data(), static_cast<std::size_t>(p.size())), rng);
}

ClickPattern sample_click_pattern(const ModeCoherentState &c, Seed seed) {
    Rng rng(seed);
    return sample_click_pattern(c, rng);
}

PhotonRecord sample_photon_numbers(const ModeCoherentState &c, Rng &rng) {
    const Eigen::VectorXd m = c.mode_mean_photons();
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(m.size()));
    for (std::size_t k = 0; k < counts.size(); ++k) {
        counts[k] = rng.poisson(m[static_cast<Eigen::Index>(k)]);
    }
    return PhotonRecord::from_counts(std::move(counts));
}

PhotonRecord sample_photon_numbers(const ModeCoherentState &c, Seed seed) {
    Rng rng(seed);
    return sample_photon_numbers(c, rng);
}

double poisson_pmf(std::uint64_t n, double mu) {
    if (mu == 0.0) {
        return n == 0 ? 1.0 : 0.0;
    }
    const double k = static_cast<double>(n);
    return std::exp(k * std::log(mu) - mu - std::lgamma(k + 1.0));
}

double photon_record_probability(const ModeCoherentState &c, const PhotonRecord &record) {
    if (record.counts.size() != c.modes()) {
        throw DimensionMismatch("photon_record_probability", c.modes(), record.counts.size());
    }
    const Eigen::VectorXd m = c.mode_mean_photons();
    double p = 1.0;
    for (std::size_t k = 0; k < record.counts.size(); ++k) {
        p *= poisson_pmf(record.counts[k], m[static_cast<Eigen::Index>(k)]);
    }
    return p;
}

namespace {

// Number of weak compositions of n into d parts, C(n + d - 1, d - 1),
// saturating at `cap + 1`.
std::uint64_t composition_count(std::uint64_t n, std::uint64_t d, std::uint64_t cap) {
    const std::uint64_t k = std::min(n, d - 1);
    const std::uint64_t top = n + d - 1;
    long double r = 1.0L;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * static_cast<long double>(top - k + i) / static_cast<long double>(i);
        if (r > static_cast<long double>(cap)) {
            return cap + 1;
        }
    }
    return static_cast<std::uint64_t>(std::llround(r));
}

void enumerate_compositions(std::size_t mode, std::uint64_t remaining, std::vector<std::uint64_t> &counts,
                            const Eigen::VectorXd &p, double log_nfact, double log_weight,
                            bool zero_weight, std::map<PhotonRecord, double> &out) {
    const std::size_t d = counts.size();
    if (mode + 1 == d) {
        counts[mode] = remaining;
        const double pk = p[static_cast<Eigen::Index>(mode)];
        const auto r = static_cast<double>(remaining);
        bool zero = zero_weight || (pk == 0.0 && remaining > 0);
        double lw = log_weight - std::lgamma(r + 1.0);
        if (remaining > 0 && pk > 0.0) {
            lw += r * std::log(pk);
        }
        out.emplace(PhotonRecord::from_counts(counts), zero ? 0.0 : std::exp(log_nfact + lw));
        return;
    }
    const double pk = p[static_cast<Eigen::Index>(mode)];
    for (std::uint64_t c = 0; c <= remaining; ++c) {
        counts[mode] = c;
        const auto r = static_cast<double>(c);
        double lw = log_weight - std::lgamma(r + 1.0);
        if (c > 0 && pk > 0.0) {
            lw += r * std::log(pk);
        }
        enumerate_compositions(mode + 1, remaining - c, counts, p, log_nfact, lw,
                               zero_weight || (pk == 0.0 && c > 0), out);
    }
}

}  // namespace

std::map<PhotonRecord, double> multinomial_oracle(const PureState &s, std::uint64_t n) {
    const std::uint64_t d = s.dim();
    if (composition_count(n, d, kMaxMultinomialRecords) > kMaxMultinomialRecords) {
        throw EnumerationTooLarge("multinomial_oracle: more than " + std::to_string(kMaxMultinomialRecords) +
                                  " photon records for n = " + std::to_string(n) + ", d = " + std::to_string(d));
    }
    const Eigen::VectorXd p = s.probabilities();
    std::map<PhotonRecord, double> out;
    std::vector<std::uint64_t> counts(d, 0);
    enumerate_compositions(0, n, counts, p, std::lgamma(static_cast<double>(n) + 1.0), 0.0, false, out);
    return out;
}

PhotonRecord poissonized_repetition_oracle(const PureState &s, double mu, Rng &rng) {
    if (!(mu >= 0.0) || !std::isfinite(mu)) {
        throw ValidationError("poissonized_repetition_oracle: mu must be finite and non-negative");
    }
    const Eigen::VectorXd p = s.probabilities();
    std::vector<double> cumulative(static_cast<std::size_t>(p.size()));
    std::partial_sum(p.begin(), p.end(), cumulative.begin());
    std::vector<std::uint64_t> counts(cumulative.size(), 0);
    const std::uint64_t repetitions = rng.poisson(mu);
    for (std::uint64_t r = 0; r < repetitions; ++r) {
        ++counts[rng.categorical(cumulative)];
    }
    return PhotonRecord::from_counts(std::move(counts));
}

PhotonRecord poissonized_repetition_oracle(const PureState &s, double mu, Seed seed) {
    Rng rng(seed);
    return poissonized_repetition_oracle(s, mu, rng);
}

}  // namespace cohmap
