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

OptimizerConfig small_config(int restarts = 16) {
    OptimizerConfig cfg;
    cfg.restarts = restarts;
    return cfg;
}

BipartiteState classical_quantum(sampling::Rng &rng, Eigen::Index na, Eigen::Index nb) {
    // sum_a p_a |a><a| (x) rho_a in a random basis of A.
    const OrthonormalBasis u = sampling::basis(rng, na);
    std::exponential_distribution<double> e;
    CMatrix rho = CMatrix::Zero(na * nb, na * nb);
    double total = 0.0;
    std::vector<double> p(static_cast<std::size_t>(na));
    for (auto &v : p) total += (v = e(rng));
    for (Eigen::Index a = 0; a < na; ++a) {
        rho += (p[static_cast<std::size_t>(a)] / total) * kron(u.projector(a), sampling::local_state(rng, nb).matrix());
    }
    return make_bipartite(0.5 * (rho + rho.adjoint()), na, nb);
}

TEST(Entropy, Examples) {
    EXPECT_NEAR(entropy(DensityMatrix(CMatrix::Identity(2, 2) / 2.0)), 1.0, 1e-15);
    EXPECT_NEAR(entropy(testing::bell().rho()), 0.0, 1e-12);
    CMatrix d = CMatrix::Zero(2, 2);
    d.diagonal() << 0.75, 0.25;
    const double expected = -(0.75 * std::log2(0.75) + 0.25 * std::log2(0.25));
    EXPECT_NEAR(entropy(DensityMatrix(d)), expected, 1e-15);
    EXPECT_NEAR(entropy(DensityMatrix(d)), 0.811278, 1e-6);
}

TEST(Entropy, RangeAndOracle) {
    sampling::Rng rng(1);
    for (int k = 0; k < 50; ++k) {
        const BipartiteState s = sampling::state(rng, 3, 2);
        const double v = entropy(s.rho());
        EXPECT_GE(v, -1e-12);
        EXPECT_LE(v, std::log2(6.0) + 1e-12);
        EXPECT_NEAR(v, testing::entropy_oracle(s.matrix()), 1e-10);
    }
}

TEST(Entropy, Concavity) {
    sampling::Rng rng(2);
    for (int k = 0; k < 200; ++k) {
        const BipartiteState a = sampling::state(rng, 2, 2);
        const BipartiteState b = sampling::state(rng, 2, 2);
        const double mixed = entropy_of(0.5 * (a.matrix() + b.matrix()));
        EXPECT_GE(mixed, 0.5 * entropy(a.rho()) + 0.5 * entropy(b.rho()) - 1e-9);
    }
}

TEST(Entropy, ContinuousAtRankDeficiency) {
    sampling::Rng rng(3);
    for (int k = 0; k < 20; ++k) {
        const BipartiteState pure = random_state(2, 3, 1, rng());
        const CMatrix perturbed = (pure.matrix() + 1e-13 * CMatrix::Identity(6, 6) / 6.0) / (1.0 + 1e-13);
        EXPECT_LT(std::abs(entropy_of(perturbed) - entropy(pure.rho())), 1e-9);
    }
}

TEST(MutualInformation, Examples) {
    sampling::Rng rng(4);
    EXPECT_NEAR(mutual_information(sampling::product_state(rng, 2, 3)), 0.0, 1e-9);
    EXPECT_NEAR(mutual_information(testing::bell()), 2.0, 1e-12);
    CMatrix cc = CMatrix::Zero(4, 4);
    cc(0, 0) = cc(3, 3) = 0.5;
    EXPECT_NEAR(mutual_information(make_bipartite(cc, 2, 2)), 1.0, 1e-12);
}

TEST(MutualInformation, NonnegativeAndMatchesOracle) {
    sampling::Rng rng(5);
    for (int k = 0; k < 100; ++k) {
        const BipartiteState s = sampling::state(rng, 2, 3);
        const double mi = mutual_information(s);
        EXPECT_GE(mi, -1e-9);
        EXPECT_NEAR(mi, testing::mutual_information_oracle(s.matrix(), 2, 3), 1e-10);
    }
}

TEST(MeasuredLoss, Examples) {
    sampling::Rng rng(6);
    const ProductMeasurement m = sampling::measurement(rng, 2, 3);
    const BipartiteState cc = classical_classical(sampling::distribution(rng, 2, 3), m.basis_a, m.basis_b);
    EXPECT_NEAR(measured_loss_two_sided(cc, m), 0.0, 1e-9);

    const ProductMeasurement e{computational_basis(2), computational_basis(2)};
    EXPECT_NEAR(measured_loss_two_sided(testing::bell(), e), 1.0, 1e-12);

    for (int k = 0; k < 10; ++k) {
        EXPECT_NEAR(measured_loss_two_sided(sampling::product_state(rng, 2, 2), sampling::measurement(rng, 2, 2)), 0.0,
                    1e-9);
    }
}

TEST(MeasuredLoss, EqualsMutualInformationDropOracle) {
    sampling::Rng rng(7);
    for (int k = 0; k < 30; ++k) {
        const BipartiteState s = sampling::state(rng, 2, 2);
        const ProductMeasurement m = sampling::measurement(rng, 2, 2);
        const CMatrix dephased = testing::dephase_ab_oracle(s.matrix(), m);
        const double expected = testing::mutual_information_oracle(s.matrix(), 2, 2) -
                                testing::mutual_information_oracle(dephased, 2, 2);
        EXPECT_NEAR(measured_loss_two_sided(s, m), expected, 1e-10);
    }
}

TEST(MeasuredLoss, DimensionMismatch) {
    const ProductMeasurement e{computational_basis(3), computational_basis(2)};
    EXPECT_THROW(measured_loss_two_sided(testing::bell(), e), Error);
    EXPECT_THROW(loss_split(testing::bell(), e), Error);
}

TEST(LossSplit, Examples) {
    sampling::Rng rng(8);
    const ProductMeasurement m = sampling::measurement(rng, 3, 2);
    const BipartiteState cc = classical_classical(sampling::distribution(rng, 3, 2), m.basis_a, m.basis_b);
    const LossSplit z = loss_split(cc, m);
    EXPECT_NEAR(z.loss_a, 0.0, 1e-9);
    EXPECT_NEAR(z.loss_b, 0.0, 1e-9);

    const ProductMeasurement e{computational_basis(2), computational_basis(2)};
    const LossSplit b = loss_split(testing::bell(), e);
    EXPECT_NEAR(b.loss_a, 1.0, 1e-12);
    EXPECT_NEAR(b.loss_b, 0.0, 1e-12);
}

TEST(LossSplit, NonnegativeAndAdditiveOnRandomTrials) {
    sampling::Rng rng(9);
    const std::array<std::pair<Eigen::Index, Eigen::Index>, 4> dims{{{2, 2}, {2, 3}, {3, 2}, {3, 3}}};
    for (int k = 0; k < 500; ++k) {
        const auto [na, nb] = dims[static_cast<std::size_t>(k % 4)];
        const BipartiteState s = sampling::state(rng, na, nb);
        const ProductMeasurement m = sampling::measurement(rng, na, nb);
        const double loss = measured_loss_two_sided(s, m);
        const LossSplit split = loss_split(s, m);
        EXPECT_GE(loss, -1e-9);
        EXPECT_GE(split.loss_a, -1e-9);
        EXPECT_GE(split.loss_b, -1e-9);
        EXPECT_NEAR(split.loss_a + split.loss_b, loss, 1e-9);
    }
}

TEST(ConditionalEntropy, EnsembleFormMatchesJointForm) {
    // S(rho~) - S(rho~^A) equals sum_a p_a S(rho_a^B) for the A-side measurement.
    sampling::Rng rng(10);
    for (int k = 0; k < 50; ++k) {
        const BipartiteState s = sampling::state(rng, 2, 3);
        const OrthonormalBasis u = sampling::basis(rng, 2);
        const double joint = detail::post_measurement_conditional_entropy(s.matrix(), u.unitary(), Side::A, 2, 3);
        EXPECT_NEAR(joint, testing::ensemble_conditional_entropy(s.matrix(), u, 2, 3), 1e-10);
        const BipartiteState deph = dephase_one_sided(s, u, Side::A);
        EXPECT_NEAR(joint, entropy(deph.rho()) - entropy(partial_trace(deph, Side::A)), 1e-10);
    }
}

TEST(DiscordOneSided, Examples) {
    const OptimizerConfig cfg = small_config();
    sampling::Rng rng(11);
    for (int k = 0; k < 5; ++k) {
        EXPECT_NEAR(discord_one_sided(classical_quantum(rng, 2, 3), Side::A, cfg).value, 0.0, 1e-6);
        EXPECT_NEAR(discord_one_sided(sampling::product_state(rng, 2, 2), Side::B, cfg).value, 0.0, 1e-6);
    }
    const DiscordValue bell = discord_one_sided(testing::bell(), Side::A, cfg);
    EXPECT_NEAR(bell.value, 1.0, 1e-4);
    ASSERT_TRUE(bell.measured_side.has_value());
    EXPECT_EQ(*bell.measured_side, Side::A);
}

TEST(DiscordOneSided, NonnegativeAndBelowTwoSided) {
    const OptimizerConfig cfg = small_config(24);
    sampling::Rng rng(12);
    for (int k = 0; k < 10; ++k) {
        const BipartiteState s = sampling::state(rng, 2, 2);
        const double da = discord_one_sided(s, Side::A, cfg).value;
        const double db = discord_one_sided(s, Side::B, cfg).value;
        const double dab = discord_two_sided(s, cfg).value;
        EXPECT_GE(da, -1e-9);
        EXPECT_GE(db, -1e-9);
        EXPECT_GE(dab, std::max(da, db) - 1e-6);
    }
}

TEST(DiscordTwoSided, Examples) {
    const OptimizerConfig cfg = small_config();
    sampling::Rng rng(13);
    for (int k = 0; k < 5; ++k) {
        EXPECT_NEAR(discord_two_sided(sampling::classical_classical_state(rng, 2, 3), cfg).value, 0.0, 1e-6);
        EXPECT_NEAR(discord_two_sided(sampling::product_state(rng, 2, 2), cfg).value, 0.0, 1e-6);
    }
    EXPECT_NEAR(discord_two_sided(testing::bell(), cfg).value, 1.0, 1e-4);
}

TEST(DiscordTwoSided, BellAgreesWithGridOracle) {
    const BipartiteState bell = testing::bell();
    const double mi = mutual_information(bell);
    const ProductObjective retained = [&](const ProductMeasurement &m) { return mi - measured_loss_two_sided(bell, m); };
    const double grid = mi - product_basis_grid_max(retained, 8);
    EXPECT_NEAR(grid, 1.0, 1e-4);
    EXPECT_NEAR(discord_two_sided(bell, small_config()).value, grid, 1e-4);
}

TEST(DiscordTwoSided, ZeroUnderGridImpliesOneSidedZero) {
    // Reverse zero-set direction at qubit scale: when the product-basis grid
    // finds a lossless measurement, both one-sided discords vanish too.
    const OptimizerConfig cfg = small_config();
    sampling::Rng rng(14);
    for (int k = 0; k < 5; ++k) {
        RMatrix p = sampling::distribution(rng, 2, 2);
        const Vec3 a = sphere_grid(8)[static_cast<std::size_t>(sampling::uniform_index(rng, 0, 143))];
        const Vec3 b = sphere_grid(8)[static_cast<std::size_t>(sampling::uniform_index(rng, 0, 143))];
        const BipartiteState s = classical_classical(p, bloch_basis(a), bloch_basis(b));
        const double mi = mutual_information(s);
        const ProductObjective retained = [&](const ProductMeasurement &m) { return mi - measured_loss_two_sided(s, m); };
        ASSERT_LE(mi - product_basis_grid_max(retained, 8), 1e-8);
        EXPECT_LE(discord_one_sided(s, Side::A, cfg).value, 1e-6);
        EXPECT_LE(discord_one_sided(s, Side::B, cfg).value, 1e-6);
    }
}

}  // namespace
}  // namespace qdiscord
