// SPDX-License-Identifier: Apache-2.0
//
// subthz-rx: energy and spectral efficiency analysis of sub-THz MU-MIMO receivers
// Copyright (C) 2026 The subthz-rx authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <gtest/gtest.h>

#include "subthz/beamforming.hpp"
#include "test_helpers.hpp"

using namespace subthz;

namespace
{
    // Slow textbook evaluation of J, used to cross-check the library.
    double objective_direct(const arma::cx_cube &g, const arma::cx_mat &w, double snr, std::size_t users)
    {
        const arma::cx_mat gram_inv = arma::inv(w.t() * w);
        double total = 0.0;
        for (std::size_t k = 0; k < g.n_slices; ++k)
        {
            const arma::cx_mat hh = w.t() * g.slice(k);
            const arma::cx_mat m = arma::eye<arma::cx_mat>(users, users) + (snr / double(users)) * hh.t() * gram_inv * hh;
            total += std::real(arma::log_det(m)) / std::log(2.0);
        }
        return total;
    }

    arma::cx_cube random_effective(std::size_t n_bs, std::size_t users, std::size_t k, std::uint64_t seed)
    {
        std::mt19937_64 engine(seed);
        arma::cx_cube g(n_bs, users, k);
        for (std::size_t s = 0; s < k; ++s)
            g.slice(s) = fixtures::random_complex(n_bs, users, engine);
        return g;
    }

    arma::cx_mat random_phases(std::size_t rows, std::size_t cols, std::mt19937_64 &engine)
    {
        std::uniform_real_distribution<double> phase(-pi, pi);
        arma::cx_mat w(rows, cols);
        for (auto &v : w)
            v = std::polar(1.0, phase(engine));
        return w;
    }

    double log2_1p(double x) { return std::log2(1.0 + x); }
}

TEST(PhaseOnly, Examples)
{
    const arma::cx_vec v = {{0.0, 2.0}, {-3.0, 0.0}, {0.0, 0.0}};
    const auto p = phase_only(v);
    // rotated so that the first entry is real positive
    EXPECT_NEAR(std::abs(p(0) - std::complex<double>(1.0, 0.0)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(p(1) - std::complex<double>(0.0, 1.0)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(p(2) - std::complex<double>(1.0, 0.0)), 0.0, 1e-12);

    const arma::cx_vec zero(4, arma::fill::zeros);
    const auto ones = phase_only(zero);
    for (const auto &x : ones)
        EXPECT_EQ(x, std::complex<double>(1.0, 0.0));
}

TEST(TxPrecoder, LosUserGetsFullArrayGain)
{
    auto cfg = fixtures::small_config(ArchitectureKind::DigitalArray, 4, 4, 2, 4, 2, 4);
    const auto ch = fixtures::los_channel(cfg, {{0.3, 0.1, -0.4, 0.2}, {-0.5, -0.1, 0.2, 0.05, {0.0, 1.0}}});
    const auto v = design_tx_precoder(ch, cfg);
    ASSERT_EQ(v.n_rows, 16u);
    ASSERT_EQ(v.n_cols, 2u);
    const auto n_u = cfg.num_user_antennas();
    for (std::size_t u = 0; u < 2; ++u)
    {
        const arma::cx_vec v_u = v.submat(u * n_u, u, (u + 1) * n_u - 1, u);
        const double gain = std::pow(arma::norm(ch.user_block(0, u) * v_u), 2);
        EXPECT_NEAR(gain, double(cfg.num_bs_antennas() * n_u * n_u), 1e-8);
    }
    CombinerSet set{v, arma::eye<arma::cx_mat>(16, 16), {}};
    EXPECT_TRUE(combiner_violations(set, cfg).empty());
}

TEST(TxPrecoder, SingleAntennaUser)
{
    auto cfg = fixtures::small_config(ArchitectureKind::DigitalArray, 2, 2, 3, 1, 1, 2);
    const auto ch = generate_channel(cfg, {});
    const auto v = design_tx_precoder(ch, cfg);
    EXPECT_TRUE(arma::approx_equal(v, arma::cx_mat(arma::eye(3, 3), arma::zeros(3, 3)), "absdiff", 1e-12));
}

TEST(TxPrecoder, IdenticalChannelsGiveIdenticalBlocks)
{
    auto cfg = fixtures::small_config(ArchitectureKind::DigitalArray, 4, 2, 2, 2, 2, 3);
    auto ch = generate_channel(cfg, {});
    for (std::size_t k = 0; k < 3; ++k)
        ch.h.slice(k).cols(4, 7) = ch.h.slice(k).cols(0, 3);
    const auto v = design_tx_precoder(ch, cfg);
    EXPECT_LT(arma::norm(v.submat(0, 0, 3, 0) - v.submat(4, 1, 7, 1)), 1e-12);
}

TEST(EffectiveChannel, Normalization)
{
    auto cfg = fixtures::small_config(ArchitectureKind::DigitalArray, 4, 4, 1, 4, 4, 2);
    const auto ch = fixtures::los_channel(cfg, {{0.2, 0.0, 0.1, 0.1}});
    const auto g = effective_channel(ch, design_tx_precoder(ch, cfg));
    EXPECT_EQ(g.n_rows, 16u);
    EXPECT_EQ(g.n_cols, 1u);
    EXPECT_NEAR(std::pow(arma::norm(g.slice(1).col(0)), 2), 16.0 * 16.0, 1e-8);
}

TEST(AnalogCombiner, DigitalIsIdentity)
{
    auto cfg = fixtures::small_config(ArchitectureKind::DigitalArray, 2, 4, 2, 2, 1, 3);
    const auto ch = generate_channel(cfg, {});
    const auto w = design_analog_combiner(ch, cfg, design_tx_precoder(ch, cfg));
    EXPECT_TRUE(arma::approx_equal(w, arma::eye<arma::cx_mat>(8, 8), "absdiff", 0.0));
}

TEST(AnalogCombiner, StructuralConstraints)
{
    for (auto kind : {ArchitectureKind::SubArrayHybrid, ArchitectureKind::FullyConnectedHybrid})
        for (std::uint64_t seed = 1; seed <= 5; ++seed)
        {
            auto cfg = fixtures::small_config(kind, 4, 4, 2, 2, 2, 8, 4);
            ClusterChannelParams p;
            p.seed = seed;
            const auto ch = generate_channel(cfg, p);
            CombinerSet set;
            set.v_rf = design_tx_precoder(ch, cfg);
            set.w_rf = design_analog_combiner(ch, cfg, set.v_rf);
            set.w_d = design_digital_combiner(ch, set.w_rf, set.v_rf, cfg);
            const auto issues = combiner_violations(set, cfg);
            EXPECT_TRUE(issues.empty()) << to_string(kind) << ": " << (issues.empty() ? "" : issues.front());

            const auto refined = refine_analog_combiner(set.w_rf, ch, cfg, set.v_rf, 3, 0.0);
            set.w_rf = refined.w_rf;
            EXPECT_TRUE(combiner_violations(set, cfg).empty());
        }
}

TEST(AnalogCombiner, FullyConnectedSteersAtLosUser)
{
    auto cfg = fixtures::small_config(ArchitectureKind::FullyConnectedHybrid, 4, 4, 1, 2, 2, 2, 1);
    const auto ch = fixtures::los_channel(cfg, {{0.4, -0.2, 0.1, 0.0}});
    const auto w = design_analog_combiner(ch, cfg, design_tx_precoder(ch, cfg));
    const arma::cx_vec a = fixtures::upa_response(4, 4, 0.5, 0.4, -0.2);
    EXPECT_NEAR(std::abs(arma::cdot(w.col(0), a)), 16.0, 1e-8);
}

TEST(AnalogCombiner, ViolationsAreReported)
{
    auto cfg = fixtures::small_config(ArchitectureKind::SubArrayHybrid, 2, 2, 2, 1, 1, 1, 2);
    CombinerSet set;
    set.v_rf = arma::eye<arma::cx_mat>(2, 2);
    set.w_rf = arma::ones<arma::cx_mat>(4, 2);
    EXPECT_FALSE(combiner_violations(set, cfg).empty());
    set.w_rf.zeros();
    set.w_rf(0, 0) = set.w_rf(1, 0) = set.w_rf(2, 1) = set.w_rf(3, 1) = 1.0;
    EXPECT_TRUE(combiner_violations(set, cfg).empty());
    set.w_rf(3, 1) = 0.5;
    EXPECT_EQ(combiner_violations(set, cfg).size(), 1u);
}

TEST(SurrogateObjective, MatchesDirectEvaluation)
{
    std::mt19937_64 engine(21);
    const auto g = random_effective(8, 3, 5, 2);
    const auto w = random_phases(8, 4, engine);
    EXPECT_NEAR(surrogate_objective(g, w, 3.0, 3), objective_direct(g, w, 3.0, 3), 1e-9);
}

TEST(SurrogateObjective, DigitalArrayDominatesAnyHybrid)
{
    // With W = I the receiver keeps all information; any N_RF = 2 analog stage is a
    // projection. Candidates are drawn from the refiner's 64-phase grid, per subcarrier.
    std::mt19937_64 engine(8);
    const auto g = random_effective(8, 2, 4, 31);
    std::uniform_int_distribution<int> q(0, int(refinement_phase_grid) - 1);
    for (std::size_t k = 0; k < g.n_slices; ++k)
    {
        const arma::cx_cube one = g.slices(k, k);
        const double j_da = surrogate_objective(one, arma::eye<arma::cx_mat>(8, 8), 2.0, 2);
        for (int trial = 0; trial < 500; ++trial)
        {
            arma::cx_mat w(8, 2);
            for (auto &v : w)
                v = std::polar(1.0, 2.0 * pi * q(engine) / double(refinement_phase_grid));
            if (arma::rank(w) < 2)
                continue;
            EXPECT_LE(surrogate_objective(one, w, 2.0, 2), j_da + 1e-9);
        }
    }
}

TEST(Refinement, ZeroSweepsIsIdentity)
{
    std::mt19937_64 engine(1);
    auto cfg = fixtures::small_config(ArchitectureKind::FullyConnectedHybrid, 4, 2, 2, 1, 1, 4, 3);
    const auto g = random_effective(8, 2, 4, 5);
    const auto w = random_phases(8, 3, engine);
    const auto r = refine_analog_combiner(w, g, cfg, 0, 1e-4);
    EXPECT_TRUE(arma::approx_equal(r.w_rf, w, "absdiff", 0.0));
    EXPECT_EQ(r.sweeps, 0u);
    ASSERT_EQ(r.objective.size(), 1u);
}

TEST(Refinement, ObjectiveIsMonotone)
{
    for (auto kind : {ArchitectureKind::SubArrayHybrid, ArchitectureKind::FullyConnectedHybrid})
        for (std::uint64_t seed = 1; seed <= 10; ++seed)
        {
            std::mt19937_64 engine(seed);
            auto cfg = fixtures::small_config(kind, 4, 4, 3, 1, 1, 6, 4);
            cfg.snr_linear = 5.0;
            const auto g = random_effective(16, 3, 6, seed + 100);
            arma::cx_mat w = random_phases(16, 4, engine) % arma::conv_to<arma::mat>::from(combiner_support(cfg));
            const auto r = refine_analog_combiner(w, g, cfg, 6, 0.0);
            ASSERT_GE(r.objective.size(), 2u);
            for (std::size_t i = 1; i < r.objective.size(); ++i)
                EXPECT_GE(r.objective[i], r.objective[i - 1] - 1e-9) << to_string(kind) << " seed " << seed;
            EXPECT_NEAR(r.objective.back(), objective_direct(g, r.w_rf, 5.0, 3), 1e-7);
            EXPECT_GT(r.objective.back(), r.objective.front());
        }
}

TEST(Refinement, ToleranceStopsEarly)
{
    std::mt19937_64 engine(3);
    auto cfg = fixtures::small_config(ArchitectureKind::FullyConnectedHybrid, 4, 4, 2, 1, 1, 4, 2);
    const auto g = random_effective(16, 2, 4, 9);
    const auto r = refine_analog_combiner(random_phases(16, 2, engine), g, cfg, 100, 1e-2);
    EXPECT_LT(r.sweeps, 100u);
    EXPECT_EQ(r.objective.size(), r.sweeps + 1);
}

TEST(Refinement, RankOneFullyConnectedReachesArrayGain)
{
    auto cfg = fixtures::small_config(ArchitectureKind::FullyConnectedHybrid, 4, 4, 1, 2, 2, 4, 1);
    cfg.snr_linear = 0.5;
    const auto ch = fixtures::los_channel(cfg, {{-0.3, 0.2, 0.25, -0.1}});
    const auto v = design_tx_precoder(ch, cfg);
    const auto r = refine_analog_combiner(design_analog_combiner(ch, cfg, v), ch, cfg, v, 5, 1e-4);
    const double expected = log2_1p(cfg.snr_linear * double(cfg.num_bs_antennas() * cfg.num_user_antennas()));
    EXPECT_NEAR(r.objective.back() / double(cfg.subcarriers), expected, 0.01 * expected);
    // the column co-phases with the RX steering vector
    const arma::cx_vec a = fixtures::upa_response(4, 4, 0.5, -0.3, 0.2);
    EXPECT_NEAR(std::abs(arma::cdot(r.w_rf.col(0), a)), 16.0, 1e-6);
}

TEST(DigitalCombiner, MatchesDirectMmse)
{
    std::mt19937_64 engine(12);
    auto cfg = fixtures::small_config(ArchitectureKind::FullyConnectedHybrid, 4, 2, 3, 1, 1, 3, 5);
    cfg.snr_linear = 2.5;
    const auto g = random_effective(8, 3, 3, 44);
    const auto w = random_phases(8, 5, engine);
    const auto w_d = design_digital_combiner(g, w, cfg);
    ASSERT_EQ(w_d.size(), 3u);
    const double sigma2 = 1.0 / cfg.snr_linear;
    for (std::size_t k = 0; k < 3; ++k)
    {
        const arma::cx_mat hh = w.t() * g.slice(k);
        const arma::cx_mat direct = arma::solve(hh * hh.t() + sigma2 * 3.0 * w.t() * w, hh);
        EXPECT_LT(arma::norm(w_d[k] - direct, "fro"), 1e-9 * arma::norm(direct, "fro"));
    }
}

TEST(DigitalCombiner, HighSnrApproachesZeroForcing)
{
    auto cfg = fixtures::small_config(ArchitectureKind::DigitalArray, 2, 4, 3, 1, 1, 2);
    cfg.snr_linear = 1e10;
    const auto g = random_effective(8, 3, 2, 6);
    const auto w_d = design_digital_combiner(g, arma::eye<arma::cx_mat>(8, 8), cfg);
    for (std::size_t k = 0; k < 2; ++k)
    {
        EXPECT_LT(arma::norm(w_d[k].t() * g.slice(k) - arma::eye<arma::cx_mat>(3, 3), "fro"), 1e-6);
        EXPECT_LT(arma::norm(w_d[k] - arma::pinv(g.slice(k)).t(), "fro"), 1e-6);
    }
}

TEST(DigitalCombiner, SingleUserIsMatchedFilter)
{
    auto cfg = fixtures::small_config(ArchitectureKind::DigitalArray, 2, 4, 1, 1, 1, 2);
    cfg.snr_linear = 0.1;
    const auto g = random_effective(8, 1, 2, 7);
    const auto w_d = design_digital_combiner(g, arma::eye<arma::cx_mat>(8, 8), cfg);
    for (std::size_t k = 0; k < 2; ++k)
    {
        const double cosine = std::abs(arma::cdot(w_d[k].col(0), g.slice(k).col(0))) /
                              (arma::norm(w_d[k].col(0)) * arma::norm(g.slice(k).col(0)));
        EXPECT_NEAR(cosine, 1.0, 1e-12);
    }
}

TEST(DigitalCombiner, SingularAnalogStageIsReported)
{
    auto cfg = fixtures::small_config(ArchitectureKind::FullyConnectedHybrid, 2, 2, 1, 1, 1, 1, 2);
    const auto g = random_effective(4, 1, 1, 1);
    const arma::cx_mat w(4, 2, arma::fill::ones); // two identical columns
    EXPECT_THROW(design_digital_combiner(g, w, cfg), SingularMatrixError);
}

TEST(DigitalCombiner, OrthonormalAnalogStageWhitensNoise)
{
    std::mt19937_64 engine(5);
    auto cfg = fixtures::small_config(ArchitectureKind::FullyConnectedHybrid, 4, 2, 2, 1, 1, 2, 3);
    cfg.snr_linear = 0.8;
    const auto g = random_effective(8, 2, 2, 19);
    arma::cx_mat q, r;
    arma::qr_econ(q, r, fixtures::random_complex(8, 3, engine));
    const auto w_d = design_digital_combiner(g, q, cfg);
    for (std::size_t k = 0; k < 2; ++k)
    {
        const arma::cx_mat hh = q.t() * g.slice(k);
        const arma::cx_mat direct =
            arma::solve(hh * hh.t() + (2.0 / cfg.snr_linear) * arma::eye<arma::cx_mat>(3, 3), hh);
        EXPECT_LT(arma::norm(w_d[k] - direct, "fro"), 1e-10);
    }
}

TEST(DigitalCombiner, SquareZeroForcingLimit)
{
    auto cfg = fixtures::small_config(ArchitectureKind::DigitalArray, 2, 1, 2, 1, 1, 1);
    cfg.snr_linear = 1e13;
    const auto g = random_effective(2, 2, 1, 23);
    const auto w_d = design_digital_combiner(g, arma::eye<arma::cx_mat>(2, 2), cfg);
    EXPECT_LT(arma::norm(w_d[0].t() * g.slice(0) - arma::eye<arma::cx_mat>(2, 2), "fro"), 1e-9);
}

TEST(TxPrecoder, MatchesConjugateSteeringPhases)
{
    auto cfg = fixtures::small_config(ArchitectureKind::DigitalArray, 2, 2, 1, 3, 2, 2);
    const auto ch = fixtures::los_channel(cfg, {{0.1, 0.0, 0.35, -0.15}});
    const arma::cx_vec v = design_tx_precoder(ch, cfg).col(0);
    const arma::cx_vec a_tx = fixtures::upa_response(3, 2, 0.5, 0.35, -0.15);
    EXPECT_NEAR(std::pow(std::abs(arma::cdot(a_tx, v)), 2), 36.0, 1e-9);
    EXPECT_NEAR(std::arg(v(0)), 0.0, 1e-12);
}
