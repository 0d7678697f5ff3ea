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

#include "cohmap/core.h"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>

#include "cohmap/errors.h"

namespace cohmap {

PureState::PureState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() == 0) {
        throw ValidationError("PureState: dimension must be at least 1");
    }
    const double norm2 = amplitudes_.squaredNorm();
    if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > kStructuralTol) {
        std::ostringstream msg;
        msg << "PureState: squared norm " << std::setprecision(17) << norm2 << " is not 1";
        throw ValidationError(msg.str());
    }
}

PureState PureState::normalized(ComplexVector v) {
    if (v.size() == 0) {
        throw ValidationError("PureState: dimension must be at least 1");
    }
    const double norm = v.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw ValidationError("PureState: cannot normalize a zero vector");
    }
    v /= norm;
    return PureState(std::move(v));
}

PureState PureState::basis(std::size_t d, std::size_t k) {
    if (k >= d) {
        throw ValidationError("PureState::basis: index " + std::to_string(k) + " out of range for d = " +
                              std::to_string(d));
    }
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(d));
    v[static_cast<Eigen::Index>(k)] = 1.0;
    return PureState(std::move(v));
}

PureState PureState::uniform(std::size_t d) {
    if (d == 0) {
        throw ValidationError("PureState: dimension must be at least 1");
    }
    return PureState(ComplexVector::Constant(static_cast<Eigen::Index>(d), 1.0 / std::sqrt(static_cast<double>(d))));
}

double unitarity_defect(const ComplexMatrix &m) {
    if (m.rows() != m.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    const ComplexMatrix g = m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols());
    return g.cwiseAbs().maxCoeff();
}

UnitaryOp::UnitaryOp(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) {
        throw ValidationError("UnitaryOp: matrix must be square and non-empty");
    }
    const double defect = unitarity_defect(matrix_);
    if (!(defect <= kStructuralTol)) {
        throw ValidationError("UnitaryOp: |U^dagger U - I| = " + std::to_string(defect));
    }
}

UnitaryOp UnitaryOp::identity(std::size_t d) {
    const auto n = static_cast<Eigen::Index>(d);
    return UnitaryOp(ComplexMatrix::Identity(n, n));
}

UnitaryOp UnitaryOp::hadamard() {
    ComplexMatrix h(2, 2);
    const double r = 1.0 / std::sqrt(2.0);
    h << r, r, r, -r;
    return UnitaryOp(std::move(h));
}

UnitaryOp UnitaryOp::adjoint() const {
    return UnitaryOp(matrix_.adjoint());
}

Complex inner_product(const PureState &a, const PureState &b) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatch("inner_product", a.dim(), b.dim());
    }
    // Eigen's dot() conjugates its first argument.
    return a.amplitudes().dot(b.amplitudes());
}

PureState apply_unitary(const UnitaryOp &u, const PureState &s) {
    if (u.dim() != s.dim()) {
        throw DimensionMismatch("apply_unitary", u.dim(), s.dim());
    }
    return PureState(u.matrix() * s.amplitudes());
}

namespace {

ComplexMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng &rng) {
    ComplexMatrix g(rows, cols);
    const double s = 1.0 / std::sqrt(2.0);
    // Column-major fill order is part of the seed contract.
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double re = rng.normal();
            const double im = rng.normal();
            g(i, j) = Complex(re * s, im * s);
        }
    }
    return g;
}

}  // namespace

PureState random_state(std::size_t d, Seed seed) {
    if (d == 0) {
        throw ValidationError("random_state: dimension must be at least 1");
    }
    Rng rng(seed);
    return PureState::normalized(gaussian_matrix(static_cast<Eigen::Index>(d), 1, rng).col(0));
}

UnitaryOp random_unitary(std::size_t d, Seed seed) {
    if (d == 0) {
        throw ValidationError("random_unitary: dimension must be at least 1");
    }
    const auto n = static_cast<Eigen::Index>(d);
    Rng rng(seed);
    const ComplexMatrix g = gaussian_matrix(n, n, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
    const ComplexMatrix &r = qr.matrixQR();
    for (Eigen::Index j = 0; j < n; ++j) {
        const Complex rjj = r(j, j);
        const double mag = std::abs(rjj);
        q.col(j) *= mag > 0.0 ? rjj / mag : Complex(1.0);
    }
    return UnitaryOp(std::move(q));
}

}  // namespace cohmap
