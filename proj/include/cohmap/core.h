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

// Dense complex states and unitaries for the qubit side of a protocol.

#ifndef COHMAP_CORE_H
#define COHMAP_CORE_H

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "cohmap/rng.h"

namespace cohmap {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Tolerance for structural invariants (normalization, unitarity).
inline constexpr double kStructuralTol = 1e-10;
/// Tolerance for checks on composed operations.
inline constexpr double kComposedTol = 1e-9;

/// A normalized pure state sum_k lambda_k |k> of dimension d >= 1.
class PureState {
   public:
    /// Throws ValidationError if `amplitudes` is empty or its norm differs
    /// from 1 by more than kStructuralTol.
    explicit PureState(ComplexVector amplitudes);

    /// Rescales `v` to unit norm. Throws on an empty or zero vector.
    static PureState normalized(ComplexVector v);
    /// Canonical basis state |k>, 0-based.
    static PureState basis(std::size_t d, std::size_t k);
    /// Equal-weight superposition over all d basis states.
    static PureState uniform(std::size_t d);

    [[nodiscard]] std::size_t dim() const {
        return static_cast<std::size_t>(amplitudes_.size());
    }
    [[nodiscard]] const ComplexVector &amplitudes() const {
        return amplitudes_;
    }
    [[nodiscard]] Complex operator[](std::size_t k) const {
        return amplitudes_[static_cast<Eigen::Index>(k)];
    }
    /// Born-rule probabilities |lambda_k|^2.
    [[nodiscard]] Eigen::VectorXd probabilities() const {
        return amplitudes_.cwiseAbs2();
    }

   private:
    ComplexVector amplitudes_;
};

/// A d x d unitary. Construction checks U^dagger U = I entrywise.
class UnitaryOp {
   public:
    explicit UnitaryOp(ComplexMatrix matrix);

    static UnitaryOp identity(std::size_t d);
    /// (1/sqrt2) [[1, 1], [1, -1]].
    static UnitaryOp hadamard();

    [[nodiscard]] std::size_t dim() const {
        return static_cast<std::size_t>(matrix_.rows());
    }
    [[nodiscard]] const ComplexMatrix &matrix() const {
        return matrix_;
    }
    [[nodiscard]] UnitaryOp adjoint() const;

   private:
    ComplexMatrix matrix_;
};

/// sum_k conj(a_k) b_k. Throws DimensionMismatch.
Complex inner_product(const PureState &a, const PureState &b);

/// U |s>. Throws DimensionMismatch.
PureState apply_unitary(const UnitaryOp &u, const PureState &s);

/// Largest entrywise deviation of U^dagger U from the identity.
double unitarity_defect(const ComplexMatrix &m);

/// Uniform on the complex unit sphere in C^d. Throws ValidationError if d == 0.
PureState random_state(std::size_t d, Seed seed);

/// Haar-random unitary: QR of a complex Gaussian matrix with the phases of
/// R's diagonal moved into Q. Throws ValidationError if d == 0.
UnitaryOp random_unitary(std::size_t d, Seed seed);

}  // namespace cohmap

#endif  // COHMAP_CORE_H
