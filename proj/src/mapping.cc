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

#include "cohmap/mapping.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/multiprecision/cpp_int.hpp>

#include "cohmap/errors.h"

namespace cohmap {

ModeCoherentState::ModeCoherentState(ComplexVector mode_amplitudes, Complex alpha)
    : amplitudes_(std::move(mode_amplitudes)), alpha_(alpha) {
    if (amplitudes_.size() == 0) {
        throw ValidationError("ModeCoherentState: at least one mode is required");
    }
    const double energy = amplitudes_.squaredNorm();
    const double mu = std::norm(alpha_);
    if (!std::isfinite(energy) || !std::isfinite(mu)) {
        throw ValidationError("ModeCoherentState: non-finite amplitude");
    }
    if (std::abs(energy - mu) > kComposedTol * std::max(1.0, mu)) {
        throw ValidationError("ModeCoherentState: sum of mode photon numbers " + std::to_string(energy) +
                              " differs from |alpha|^2 = " + std::to_string(mu));
    }
}

ModeCoherentState ModeCoherentState::from_amplitudes(ComplexVector mode_amplitudes) {
    const double norm = mode_amplitudes.norm();
    return ModeCoherentState(std::move(mode_amplitudes), Complex(norm));
}

ModeCoherentState ModeCoherentState::vacuum(std::size_t modes) {
    return ModeCoherentState(ComplexVector::Zero(static_cast<Eigen::Index>(modes)), Complex(0.0));
}

ModeCoherentState map_state(const PureState &s, Complex alpha) {
    return ModeCoherentState(alpha * s.amplitudes(), alpha);
}

ModeCoherentState map_unitary_apply(const UnitaryOp &u, const ModeCoherentState &c) {
    if (u.dim() != c.modes()) {
        throw DimensionMismatch("map_unitary_apply", u.dim(), c.modes());
    }
    return ModeCoherentState(u.matrix() * c.amplitudes(), c.alpha());
}

ModeCoherentState phase_encoded_state(std::span<const std::uint8_t> bits, Complex alpha) {
    if (bits.empty()) {
        throw ValidationError("phase_encoded_state: empty bit string");
    }
    const Complex amp = alpha / std::sqrt(static_cast<double>(bits.size()));
    ComplexVector v(static_cast<Eigen::Index>(bits.size()));
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] > 1) {
            throw ValidationError("phase_encoded_state: bits must be 0 or 1");
        }
        v[static_cast<Eigen::Index>(i)] = bits[i] != 0 ? -amp : amp;
    }
    return ModeCoherentState(std::move(v), alpha);
}

Complex overlap_coherent(Complex delta, Complex alpha) {
    if (!(std::abs(delta) <= 1.0 + kStructuralTol)) {
        throw ValidationError("overlap_coherent: |delta| must not exceed 1");
    }
    return std::exp(std::norm(alpha) * (delta - 1.0));
}

double solve_alpha_for_overlap(double delta, double target_delta_alpha) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw NoSolution("solve_alpha_for_overlap: delta must lie in (0, 1)");
    }
    if (!(target_delta_alpha > 0.0 && target_delta_alpha < 1.0)) {
        throw NoSolution("solve_alpha_for_overlap: target overlap must lie in (0, 1)");
    }
    return std::log(target_delta_alpha) / (delta - 1.0);
}

double transmitted_info(std::size_t d) {
    if (d == 0) {
        throw ValidationError("transmitted_info: dimension must be at least 1");
    }
    return std::log2(static_cast<double>(d));
}

namespace {

boost::multiprecision::cpp_int binomial(std::uint64_t n, std::uint64_t k) {
    k = std::min(k, n - k);
    boost::multiprecision::cpp_int r = 1;
    // Each partial product is C(n - k + i, i), so the division is exact.
    for (std::uint64_t i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

}  // namespace

DimensionBound effective_dimension_bound(double mu, std::uint64_t delta, std::size_t d) {
    if (!(mu >= 0.0) || !std::isfinite(mu)) {
        throw ValidationError("effective_dimension_bound: mu must be finite and non-negative");
    }
    if (delta < 1) {
        throw ValidationError("effective_dimension_bound: delta must be at least 1");
    }
    if (d < 1) {
        throw ValidationError("effective_dimension_bound: dimension must be at least 1");
    }
    const auto max_photons = static_cast<std::uint64_t>(std::floor(mu)) + delta;
    const std::uint64_t top = max_photons + d - 1;
    const std::uint64_t bottom = d - 1;

    DimensionBound out;
    out.mu = mu;
    out.delta = delta;
    out.d = d;
    out.d_alpha_upper = (2 * delta * binomial(top, bottom)).str();
    const double log_binom = std::lgamma(static_cast<double>(top) + 1.0) -
                             std::lgamma(static_cast<double>(bottom) + 1.0) -
                             std::lgamma(static_cast<double>(top - bottom) + 1.0);
    out.log2_d_alpha_upper = std::log2(2.0 * static_cast<double>(delta)) + log_binom / std::numbers::ln2;
    out.tail_probability_upper = poisson_tail_bound(mu, static_cast<double>(delta));
    return out;
}

double poisson_tail_bound(double mu, double delta) {
    if (!(mu >= 0.0) || !std::isfinite(mu)) {
        throw ValidationError("poisson_tail_bound: mu must be finite and non-negative");
    }
    if (!(delta > 0.0)) {
        throw ValidationError("poisson_tail_bound: delta must be positive");
    }
    if (mu == 0.0) {
        return 0.0;
    }
    const double top = mu + delta;
    const double log_bound = std::numbers::ln2 - mu + top * (1.0 + std::log(mu) - std::log(top));
    return std::min(1.0, std::exp(log_bound));
}

double poisson_tail_exact(double mu, double delta) {
    if (!(mu >= 0.0) || !std::isfinite(mu)) {
        throw ValidationError("poisson_tail_exact: mu must be finite and non-negative");
    }
    if (!(delta > 0.0)) {
        throw ValidationError("poisson_tail_exact: delta must be positive");
    }
    if (mu == 0.0) {
        return 0.0;
    }
    auto pmf = [mu](double n) { return std::exp(n * std::log(mu) - mu - std::lgamma(n + 1.0)); };
    double total = 0.0;
    for (double n = std::floor(mu - delta); n >= 0.0; n -= 1.0) {
        const double t = pmf(n);
        total += t;
        if (t < total * 1e-18) {
            break;
        }
    }
    for (double n = std::ceil(mu + delta);; n += 1.0) {
        const double t = pmf(n);
        total += t;
        if (t <= total * 1e-18 || t == 0.0) {
            break;
        }
    }
    return total;
}

}  // namespace cohmap
