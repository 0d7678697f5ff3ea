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

// Coherent-state mapping of qubit protocols.
//
// A d-dimensional state sum_k lambda_k |k> becomes a product of d coherent
// states with amplitudes alpha * lambda_k, a unitary U becomes the linear
// optics network acting on the mode amplitude vector with the same matrix,
// and a canonical-basis measurement becomes one threshold detector per mode
// (see detection.h).

#ifndef COHMAP_MAPPING_H
#define COHMAP_MAPPING_H

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cohmap/core.h"

namespace cohmap {

/// A product of coherent states, one complex amplitude per optical mode.
///
/// Invariant: sum_k |amplitude_k|^2 == |alpha|^2 within kComposedTol, so
/// the mean total photon number is |alpha|^2.
class ModeCoherentState {
   public:
    ModeCoherentState(ComplexVector mode_amplitudes, Complex alpha);

    /// A state described only by its amplitudes; alpha is taken as the
    /// (real, non-negative) norm of the amplitude vector.
    static ModeCoherentState from_amplitudes(ComplexVector mode_amplitudes);
    /// All modes in vacuum.
    static ModeCoherentState vacuum(std::size_t modes);

    [[nodiscard]] std::size_t modes() const {
        return static_cast<std::size_t>(amplitudes_.size());
    }
    [[nodiscard]] const ComplexVector &amplitudes() const {
        return amplitudes_;
    }
    [[nodiscard]] Complex operator[](std::size_t k) const {
        return amplitudes_[static_cast<Eigen::Index>(k)];
    }
    [[nodiscard]] Complex alpha() const {
        return alpha_;
    }
    /// |alpha|^2.
    [[nodiscard]] double mean_photon_number() const {
        return std::norm(alpha_);
    }
    /// |amplitude_k|^2 for every mode.
    [[nodiscard]] Eigen::VectorXd mode_mean_photons() const {
        return amplitudes_.cwiseAbs2();
    }

   private:
    ComplexVector amplitudes_;
    Complex alpha_;
};

/// |psi> -> (alpha lambda_1, ..., alpha lambda_d).
ModeCoherentState map_state(const PureState &s, Complex alpha);

/// The linear optics network U applied to the mode amplitudes. Coherent
/// product states stay coherent product states; the amplitude vector
/// transforms exactly as the qubit state vector. Throws DimensionMismatch.
ModeCoherentState map_unitary_apply(const UnitaryOp &u, const ModeCoherentState &c);

/// Amplitude (-1)^{bits_i} alpha / sqrt(n) in mode i: the phase-encoded
/// string state used by Hidden Matching and the signature protocol.
/// `bits` entries must be 0 or 1; n = bits.size() >= 1.
ModeCoherentState phase_encoded_state(std::span<const std::uint8_t> bits, Complex alpha);

/// Overlap of the coherent-state versions of two states whose qubit overlap
/// is `delta`: exp(|alpha|^2 (delta - 1)). Requires |delta| <= 1.
Complex overlap_coherent(Complex delta, Complex alpha);

/// |alpha|^2 such that exp(|alpha|^2 (delta - 1)) == target, for real
/// delta and target in (0, 1). Throws NoSolution otherwise.
double solve_alpha_for_overlap(double delta, double target_delta_alpha);

/// log2 d, the communication carried by states in a d-dimensional space.
double transmitted_info(std::size_t d);

/// Upper bounds on the subspace spanned by Fock states whose total photon
/// number lies within `delta` of the mean.
struct DimensionBound {
    double mu = 0.0;
    std::uint64_t delta = 0;
    std::size_t d = 0;
    /// Decimal digits of 2 Delta C(floor(mu) + Delta + d - 1, d - 1).
    std::string d_alpha_upper;
    double log2_d_alpha_upper = 0.0;
    /// Probability mass outside the window, bounded by poisson_tail_bound.
    double tail_probability_upper = 0.0;
};

/// Requires mu >= 0, delta >= 1, d >= 1. The maximal photon number of the
/// window is floor(mu) + delta.
DimensionBound effective_dimension_bound(double mu, std::uint64_t delta, std::size_t d);

/// min(1, 2 e^{-mu} (e mu / (mu + delta))^{mu + delta}), a bound on
/// P(|n - mu| >= delta) for n ~ Poisson(mu). Requires mu >= 0, delta > 0;
/// mu == 0 gives 0.
double poisson_tail_bound(double mu, double delta);

/// P(|n - mu| >= delta) for n ~ Poisson(mu), summed term by term over both
/// tails. Same preconditions as poisson_tail_bound.
double poisson_tail_exact(double mu, double delta);

}  // namespace cohmap

#endif  // COHMAP_MAPPING_H
