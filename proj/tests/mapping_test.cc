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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "cohmap/errors.h"
#include "cohmap/mapping.h"
#include "oracles.h"

using namespace cohmap;

TEST(MapState, examples) {
    const auto c1 = map_state(PureState::basis(3, 0), 2.0);
    EXPECT_EQ(c1.modes(), 3U);
    EXPECT_NEAR(std::abs(c1[0] - 2.0), 0.0, 1e-15);
    EXPECT_EQ(c1[1], Complex(0.0));
    const auto c2 = map_state(PureState::uniform(4), 2.0);
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_NEAR(std::abs(c2[k] - 1.0), 0.0, 1e-15);
    }
    ComplexVector v(3);
    v << 1.0, -1.0, -1.0;
    const auto c3 = map_state(PureState::normalized(v), std::sqrt(3.0));
    EXPECT_NEAR(c3[0].real(), 1.0, 1e-15);
    EXPECT_NEAR(c3[1].real(), -1.0, 1e-15);
    EXPECT_NEAR(c3[2].real(), -1.0, 1e-15);
    EXPECT_NEAR(c3.mean_photon_number(), 3.0, 1e-12);
}

TEST(MapState, total_photon_number_is_alpha_squared) {
    for (std::uint64_t i = 0; i < 20; ++i) {
        const Complex alpha(0.3 * i, -0.1 * i);
        const auto c = map_state(random_state(1 + i, Seed{1, i}), alpha);
        EXPECT_NEAR(c.mode_mean_photons().sum(), std::norm(alpha), 1e-9 * std::max(1.0, std::norm(alpha)));
    }
}

TEST(ModeCoherentState, rejects_inconsistent_alpha) {
    ComplexVector v(2);
    v << 1.0, 1.0;
    EXPECT_THROW(ModeCoherentState(v, 1.0), ValidationError);
    EXPECT_NO_THROW(ModeCoherentState(v, std::sqrt(2.0)));
    EXPECT_NEAR(ModeCoherentState::from_amplitudes(v).mean_photon_number(), 2.0, 1e-12);
    EXPECT_EQ(ModeCoherentState::vacuum(3).mean_photon_number(), 0.0);
}

TEST(MapUnitaryApply, beam_splitter_examples) {
    const UnitaryOp bs = UnitaryOp::hadamard();
    const Complex b(0.7, 0.2);
    ComplexVector same(2), opposite(2);
    same << b, b;
    opposite << b, -b;
    const auto s = map_unitary_apply(bs, ModeCoherentState::from_amplitudes(same));
    EXPECT_LT(std::abs(s[0] - std::sqrt(2.0) * b), 1e-15);
    EXPECT_LT(std::abs(s[1]), 1e-15);
    const auto o = map_unitary_apply(bs, ModeCoherentState::from_amplitudes(opposite));
    EXPECT_LT(std::abs(o[0]), 1e-15);
    EXPECT_LT(std::abs(o[1] - std::sqrt(2.0) * b), 1e-15);
    const auto id = map_unitary_apply(UnitaryOp::identity(2), ModeCoherentState::from_amplitudes(same));
    EXPECT_EQ(id.amplitudes(), same);
    EXPECT_THROW(map_unitary_apply(UnitaryOp::identity(3), ModeCoherentState::from_amplitudes(same)),
                 DimensionMismatch);
}

TEST(MapUnitaryApply, commutes_with_map_state) {
    for (std::uint64_t i = 0; i < 30; ++i) {
        const std::size_t d = 2 + i;
        const auto u = random_unitary(d, Seed{2, i});
        const auto psi = random_state(d, Seed{3, i});
        const Complex alpha(1.5, 0.5);
        const auto lhs = map_unitary_apply(u, map_state(psi, alpha));
        const auto rhs = map_state(apply_unitary(u, psi), alpha);
        EXPECT_LT((lhs.amplitudes() - rhs.amplitudes()).cwiseAbs().maxCoeff(), 1e-9);
        EXPECT_NEAR(std::abs(lhs.alpha()), std::abs(alpha), 1e-9);
    }
}

TEST(OverlapCoherent, closed_form_examples) {
    EXPECT_NEAR(std::abs(overlap_coherent(1.0, Complex(2.3, 1.0)) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(overlap_coherent(0.0, 1.0).real(), 0.367879441171, 1e-12);
    EXPECT_NEAR(overlap_coherent(0.5, 2.0).real(), 0.135335283237, 1e-12);
    EXPECT_THROW(overlap_coherent(1.1, 1.0), ValidationError);
}

TEST(OverlapCoherent, matches_per_mode_product_for_explicit_pairs) {
    // Orthogonal pair and a pair with overlap exactly 1/2.
    const auto e0 = PureState::basis(2, 0);
    const auto e1 = PureState::basis(2, 1);
    EXPECT_NEAR(std::abs(oracle::coherent_overlap_product(map_state(e0, 1.0).amplitudes(),
                                                          map_state(e1, 1.0).amplitudes()) -
                         overlap_coherent(0.0, 1.0)),
                0.0, 1e-15);
    ComplexVector v(2);
    v << 0.5, std::sqrt(0.75);
    const auto half = PureState{v};
    EXPECT_NEAR(std::abs(oracle::coherent_overlap_product(map_state(e0, 2.0).amplitudes(),
                                                          map_state(half, 2.0).amplitudes()) -
                         std::exp(-2.0)),
                0.0, 1e-15);
}

TEST(OverlapCoherent, per_mode_product_property) {
    for (std::uint64_t i = 0; i < 200; ++i) {
        const std::size_t d = 1 + i % 64;
        const auto psi = random_state(d, Seed{4, i});
        const auto phi = random_state(d, Seed{5, i});
        const double mu = 10.0 * static_cast<double>(i % 11) / 10.0;
        const Complex alpha(std::sqrt(mu), 0.0);
        const Complex delta = inner_product(psi, phi);
        const Complex direct = oracle::coherent_overlap_product(map_state(psi, alpha).amplitudes(),
                                                                map_state(phi, alpha).amplitudes());
        EXPECT_LT(std::abs(direct - overlap_coherent(delta, alpha)), 1e-9) << i;
    }
}

TEST(OverlapCoherent, regime_ordering_on_grid) {
    for (int k = 1; k <= 19; ++k) {
        const double delta = 0.05 * k;
        EXPECT_GT(overlap_coherent(delta, std::sqrt(0.25)).real(), delta);
        EXPECT_LT(overlap_coherent(delta, 2.0).real(), delta);
        // At mu = 1, exp(delta - 1) > delta for every delta < 1.
        EXPECT_GT(overlap_coherent(delta, 1.0).real(), delta);
    }
}

TEST(SolveAlpha, examples_and_round_trip) {
    EXPECT_NEAR(solve_alpha_for_overlap(0.5, 0.5), 2.0 * std::numbers::ln2, 1e-12);
    const double e1 = std::exp(-1.0);
    EXPECT_NEAR(solve_alpha_for_overlap(e1, e1), 1.0 / (1.0 - e1), 1e-12);
    EXPECT_NEAR(solve_alpha_for_overlap(e1, e1), 1.581976706869, 1e-11);
    for (int k = 1; k <= 19; ++k) {
        const double delta = 0.05 * k;
        for (double target : {0.01, 0.3, delta, 0.99}) {
            const double mu = solve_alpha_for_overlap(delta, target);
            EXPECT_NEAR(overlap_coherent(delta, std::sqrt(mu)).real(), target, 1e-12);
        }
    }
    EXPECT_THROW(solve_alpha_for_overlap(1.0, 0.5), NoSolution);
    EXPECT_THROW(solve_alpha_for_overlap(0.5, 1.0), NoSolution);
    EXPECT_THROW(solve_alpha_for_overlap(0.5, 0.0), NoSolution);
}

TEST(TransmittedInfo, examples) {
    EXPECT_EQ(transmitted_info(1), 0.0);
    EXPECT_EQ(transmitted_info(1024), 10.0);
    EXPECT_NEAR(transmitted_info(6), 2.584962500721, 1e-12);
    EXPECT_THROW(transmitted_info(0), ValidationError);
}

TEST(EffectiveDimensionBound, exact_values) {
    EXPECT_EQ(effective_dimension_bound(1.0, 2, 2).d_alpha_upper, "16");
    EXPECT_EQ(effective_dimension_bound(0.0, 1, 1).d_alpha_upper, "2");
    // 2 * 5 * C(21, 15) at mu = 1, d = 16.
    EXPECT_EQ(effective_dimension_bound(1.0, 5, 16).d_alpha_upper,
              std::to_string(10 * oracle::binomial_coefficient(21, 15)));
    // Non-integer mu uses floor(mu) in the window.
    EXPECT_EQ(effective_dimension_bound(2.7, 3, 5).d_alpha_upper,
              std::to_string(6 * oracle::binomial_coefficient(9, 4)));
    for (unsigned d : {3U, 10U, 40U}) {
        const auto b = effective_dimension_bound(4.0, 6, d);
        const double exact = 12.0 * static_cast<double>(oracle::binomial_coefficient(4 + 6 + d - 1, d - 1));
        EXPECT_NEAR(b.log2_d_alpha_upper, std::log2(exact), 1e-9) << d;
    }
    EXPECT_THROW(effective_dimension_bound(1.0, 0, 4), ValidationError);
    EXPECT_THROW(effective_dimension_bound(-1.0, 1, 4), ValidationError);
    EXPECT_THROW(effective_dimension_bound(1.0, 1, 0), ValidationError);
}

TEST(EffectiveDimensionBound, log_ratio_stays_bounded) {
    double prev = 0.0;
    for (unsigned k = 6; k <= 12; ++k) {
        const auto b = effective_dimension_bound(1.0, 5, std::size_t{1} << k);
        const double ratio = b.log2_d_alpha_upper / k;
        EXPECT_LT(ratio, 7.0) << k;
        if (k > 6) {
            EXPECT_LT(ratio - prev, 0.2) << k;
        }
        prev = ratio;
        EXPECT_GE(b.tail_probability_upper, 0.0);
        EXPECT_LE(b.tail_probability_upper, 1.0);
    }
}

TEST(PoissonTailBound, closed_form_values) {
    EXPECT_NEAR(poisson_tail_bound(1.0, 9.0), oracle::raw_tail_bound(1.0, 9.0), 1e-18);
    EXPECT_NEAR(poisson_tail_bound(1.0, 9.0), 1.6206167855e-6, 1e-15);
    EXPECT_NEAR(poisson_tail_bound(4.0, 8.0), 0.0112183967, 1e-10);
    EXPECT_EQ(poisson_tail_bound(1.0, 1e-9), 1.0);
    EXPECT_EQ(poisson_tail_bound(0.0, 3.0), 0.0);
    EXPECT_THROW(poisson_tail_bound(1.0, 0.0), ValidationError);
}

TEST(PoissonTailBound, dominates_exact_tail_on_grid) {
    for (double mu : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        for (int delta = 1; delta <= 20; ++delta) {
            const double exact = oracle::poisson_two_sided_tail(mu, delta);
            EXPECT_LE(exact, poisson_tail_bound(mu, delta)) << mu << " " << delta;
            EXPECT_NEAR(poisson_tail_exact(mu, delta), exact, 1e-12 + 1e-9 * exact) << mu << " " << delta;
        }
    }
}
