// Copyright 2026 The qdiscord Authors
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

#include "oracles.hpp"

#include <gtest/gtest.h>

namespace qdiscord {
namespace {

using testing::MatrixNear;

TEST(OrthonormalBasis, RejectsNonUnitary) {
    CMatrix u = CMatrix::Identity(2, 2);
    u(0, 1) = 0.1;
    try {
        OrthonormalBasis b(u);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotUnitary);
    }
    EXPECT_THROW(OrthonormalBasis(CMatrix::Identity(2, 3)), Error);
}

TEST(ComputationalBasis, IsIdentity) {
    EXPECT_TRUE(MatrixNear(computational_basis(2).unitary(), CMatrix::Identity(2, 2), 0));
    const OrthonormalBasis b = computational_basis(3);
    EXPECT_TRUE(MatrixNear(b.unitary(), CMatrix::Identity(3, 3), 0));
    EXPECT_TRUE(MatrixNear(b.unitary().adjoint() * b.unitary(), CMatrix::Identity(3, 3), 0));
}

TEST(BlochBasis, PolesAndEquator) {
    const OrthonormalBasis z = bloch_basis(Vec3(0, 0, 1));
    EXPECT_TRUE(MatrixNear(z.projector(0), testing::ket_bra(testing::basis_ket(2, 0), testing::basis_ket(2, 0)), 1e-15));
    EXPECT_TRUE(MatrixNear(z.projector(1), testing::ket_bra(testing::basis_ket(2, 1), testing::basis_ket(2, 1)), 1e-15));

    const OrthonormalBasis x = bloch_basis(Vec3(1, 0, 0));
    const CMatrix id = CMatrix::Identity(2, 2);
    EXPECT_TRUE(MatrixNear(x.projector(0), 0.5 * (id + pauli()[0]), 1e-15));
    EXPECT_TRUE(MatrixNear(x.projector(1), 0.5 * (id - pauli()[0]), 1e-15));
}

TEST(BlochBasis, ProjectorsMatchDirection) {
    sampling::Rng rng(2);
    const CMatrix id = CMatrix::Identity(2, 2);
    for (int k = 0; k < 50; ++k) {
        const Vec3 a = sampling::unit_vector(rng);
        const CMatrix as = a(0) * pauli()[0] + a(1) * pauli()[1] + a(2) * pauli()[2];
        const OrthonormalBasis b = bloch_basis(a);
        EXPECT_TRUE(MatrixNear(b.projector(0), 0.5 * (id + as), 1e-14));
        EXPECT_TRUE(MatrixNear(b.projector(1), 0.5 * (id - as), 1e-14));
        EXPECT_TRUE(MatrixNear(b.projector(0) + b.projector(1), id, 1e-14));
    }
}

TEST(BlochBasis, RejectsNonUnitVector) {
    try {
        bloch_basis(Vec3(0, 0, 1.001));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotUnitVector);
    }
}

TEST(DephaseOneSided, BellComputationalA) {
    const BipartiteState out = dephase_one_sided(testing::bell(), computational_basis(2), Side::A);
    CMatrix expected = CMatrix::Zero(4, 4);
    expected(0, 0) = expected(3, 3) = 0.5;
    EXPECT_TRUE(MatrixNear(out.matrix(), expected, 1e-15));
}

TEST(DephaseOneSided, ClassicalStateFixed) {
    sampling::Rng rng(6);
    const ProductMeasurement m = sampling::measurement(rng, 3, 2);
    const BipartiteState s = classical_classical(sampling::distribution(rng, 3, 2), m.basis_a, m.basis_b);
    EXPECT_TRUE(MatrixNear(dephase_one_sided(s, m.basis_a, Side::A).matrix(), s.matrix(), 1e-12));
    EXPECT_TRUE(MatrixNear(dephase_one_sided(s, m.basis_b, Side::B).matrix(), s.matrix(), 1e-12));
}

TEST(DephaseOneSided, MatchesProjectorSumOracle) {
    sampling::Rng rng(9);
    for (int k = 0; k < 30; ++k) {
        const BipartiteState s = sampling::state(rng, 2, 3);
        const ProductMeasurement m = sampling::measurement(rng, 2, 3);
        EXPECT_TRUE(MatrixNear(dephase_one_sided(s, m.basis_a, Side::A).matrix(),
                               testing::dephase_a_oracle(s.matrix(), m.basis_a, 3), 1e-13));
        EXPECT_TRUE(MatrixNear(dephase_one_sided(s, m.basis_b, Side::B).matrix(),
                               testing::dephase_b_oracle(s.matrix(), m.basis_b, 2), 1e-13));
    }
}

TEST(DephaseOneSided, DimensionMismatch) {
    try {
        dephase_one_sided(testing::bell(), computational_basis(3), Side::A);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
    }
}

TEST(DephaseTwoSided, Examples) {
    const ProductMeasurement e{computational_basis(2), computational_basis(2)};
    EXPECT_TRUE(MatrixNear(dephase_two_sided(testing::maximally_mixed(2, 2), e).matrix(),
                           CMatrix::Identity(4, 4) / 4.0, 1e-15));
    CMatrix expected = CMatrix::Zero(4, 4);
    expected(0, 0) = expected(3, 3) = 0.5;
    EXPECT_TRUE(MatrixNear(dephase_two_sided(testing::bell(), e).matrix(), expected, 1e-15));
}

TEST(DephaseTwoSided, WernerIdenticalBasesKeepsDiagonalPattern) {
    // For identical bases the dephased Werner state is
    // sum_ab [(m - x) + (m x - 1) |<a|b>|^2] / (m^3 - m) Pi_ab with |<a|b>|^2 = delta_ab.
    sampling::Rng rng(12);
    for (Eigen::Index m : {2, 3}) {
        const double md = static_cast<double>(m);
        const OrthonormalBasis u = sampling::basis(rng, m);
        const ProductMeasurement pm{u, u};
        for (double x : {-1.0, 0.3, 1.0}) {
            CMatrix expected = CMatrix::Zero(m * m, m * m);
            for (Eigen::Index a = 0; a < m; ++a) {
                for (Eigen::Index b = 0; b < m; ++b) {
                    const double w = ((md - x) + (md * x - 1.0) * (a == b ? 1.0 : 0.0)) / (md * md * md - md);
                    expected += w * kron(u.projector(a), u.projector(b));
                }
            }
            EXPECT_TRUE(MatrixNear(dephase_two_sided(werner(m, x), pm).matrix(), expected, 1e-13));
        }
    }
}

TEST(DephaseTwoSided, FactorizesThroughEitherOrder) {
    sampling::Rng rng(13);
    for (auto [na, nb] : {std::pair<Eigen::Index, Eigen::Index>{2, 2}, {2, 3}, {3, 3}}) {
        for (int k = 0; k < 20; ++k) {
            const BipartiteState s = sampling::state(rng, na, nb);
            const ProductMeasurement m = sampling::measurement(rng, na, nb);
            const CMatrix both = dephase_two_sided(s, m).matrix();
            const CMatrix ab = dephase_one_sided(dephase_one_sided(s, m.basis_a, Side::A), m.basis_b, Side::B).matrix();
            const CMatrix ba = dephase_one_sided(dephase_one_sided(s, m.basis_b, Side::B), m.basis_a, Side::A).matrix();
            EXPECT_TRUE(MatrixNear(both, ab, 1e-12));
            EXPECT_TRUE(MatrixNear(both, ba, 1e-12));
            EXPECT_TRUE(MatrixNear(both, testing::dephase_ab_oracle(s.matrix(), m), 1e-13));
        }
    }
}

TEST(DephaseTwoSided, DimensionMismatch) {
    const ProductMeasurement m{computational_basis(2), computational_basis(2)};
    EXPECT_THROW(dephase_two_sided(testing::maximally_mixed(2, 3), m), Error);
}

TEST(DiagonalDistribution, Examples) {
    const ProductMeasurement e{computational_basis(2), computational_basis(2)};
    EXPECT_TRUE(diagonal_distribution(testing::maximally_mixed(2, 2), e).isApprox(RMatrix::Constant(2, 2, 0.25)));
    RMatrix bell = RMatrix::Zero(2, 2);
    bell(0, 0) = bell(1, 1) = 0.5;
    EXPECT_LE((diagonal_distribution(testing::bell(), e) - bell).norm(), 1e-15);

    CMatrix p01 = CMatrix::Zero(4, 4);
    p01(1, 1) = 1.0;
    RMatrix ind = RMatrix::Zero(2, 2);
    ind(0, 1) = 1.0;
    EXPECT_LE((diagonal_distribution(make_bipartite(p01, 2, 2), e) - ind).norm(), 0.0);
}

TEST(DiagonalDistribution, IsDiagonalOfDephasedState) {
    sampling::Rng rng(14);
    for (int k = 0; k < 30; ++k) {
        const BipartiteState s = sampling::state(rng, 3, 2);
        const ProductMeasurement m = sampling::measurement(rng, 3, 2);
        const RMatrix p = diagonal_distribution(s, m);
        EXPECT_GE(p.minCoeff(), -1e-15);
        EXPECT_NEAR(p.sum(), 1.0, 1e-12);
        const CMatrix w = kron(m.basis_a.unitary(), m.basis_b.unitary());
        const CMatrix rotated = w.adjoint() * dephase_two_sided(s, m).matrix() * w;
        for (Eigen::Index a = 0; a < 3; ++a)
            for (Eigen::Index b = 0; b < 2; ++b) EXPECT_NEAR(p(a, b), rotated(a * 2 + b, a * 2 + b).real(), 1e-13);
    }
}

TEST(DephasingProperties, IdempotentUnitalTracePreserving) {
    sampling::Rng rng(15);
    for (int k = 0; k < 30; ++k) {
        const BipartiteState s = sampling::state(rng, 2, 3);
        const ProductMeasurement m = sampling::measurement(rng, 2, 3);
        const BipartiteState once = dephase_two_sided(s, m);
        EXPECT_TRUE(MatrixNear(dephase_two_sided(once, m).matrix(), once.matrix(), 1e-12));
        const BipartiteState a_once = dephase_one_sided(s, m.basis_a, Side::A);
        EXPECT_TRUE(MatrixNear(dephase_one_sided(a_once, m.basis_a, Side::A).matrix(), a_once.matrix(), 1e-12));
        EXPECT_NEAR(once.matrix().trace().real(), 1.0, 1e-12);
        EXPECT_NEAR(a_once.matrix().trace().real(), 1.0, 1e-12);
        EXPECT_TRUE(MatrixNear(dephase_two_sided(testing::maximally_mixed(2, 3), m).matrix(),
                               CMatrix::Identity(6, 6) / 6.0, 1e-12));
    }
}

TEST(DephasingProperties, MarginalPreservation) {
    sampling::Rng rng(16);
    for (int k = 0; k < 50; ++k) {
        const BipartiteState s = sampling::state(rng, 3, 2);
        const ProductMeasurement m = sampling::measurement(rng, 3, 2);
        const BipartiteState rho1 = dephase_one_sided(s, m.basis_a, Side::A);
        EXPECT_TRUE(MatrixNear(partial_trace(rho1, Side::B).matrix(), partial_trace(s, Side::B).matrix(), 1e-12));
        const BipartiteState rho2 = dephase_one_sided(rho1, m.basis_b, Side::B);
        EXPECT_TRUE(MatrixNear(partial_trace(rho2, Side::A).matrix(), partial_trace(rho1, Side::A).matrix(), 1e-12));
    }
}

TEST(DephasingProperties, PurityNeverIncreases) {
    sampling::Rng rng(17);
    for (int k = 0; k < 100; ++k) {
        const BipartiteState s = sampling::state(rng, 2, 2);
        const ProductMeasurement m = sampling::measurement(rng, 2, 2);
        EXPECT_LE(purity(dephase_two_sided(s, m)), purity(s) + 1e-12);
        EXPECT_LE(purity(dephase_one_sided(s, m.basis_b, Side::B)), purity(s) + 1e-12);
    }
}

TEST(DephasingProperties, PhaseBlind) {
    sampling::Rng rng(18);
    const BipartiteState s = sampling::state(rng, 2, 3);
    const ProductMeasurement m = sampling::measurement(rng, 2, 3);
    CVector phases(3);
    phases << Complex(0, 1), Complex(-1, 0), std::polar(1.0, 0.7);
    const OrthonormalBasis rephased(m.basis_b.unitary() * phases.asDiagonal());
    EXPECT_TRUE(MatrixNear(dephase_two_sided(s, m).matrix(),
                           dephase_two_sided(s, ProductMeasurement{m.basis_a, rephased}).matrix(), 1e-13));
}

}  // namespace
}  // namespace qdiscord
