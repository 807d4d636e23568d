#include <gtest/gtest.h>

#include <cmath>

#include "curlow/coherence.hpp"
#include "curlow/synth.hpp"
#include "oracles.hpp"

using namespace curlow;

namespace {

SynthSpec spec_of(Index n, Index m, SpectrumKind kind, Index r, std::uint64_t seed) {
    SynthSpec s;
    s.n = n;
    s.m = m;
    s.kind = kind;
    s.r = r;
    s.seed = RngStream{seed, 0};
    return s;
}

}  // namespace

TEST(Generate, ExactLowRankHasPlantedRank) {
    const auto inst = generate<double>(spec_of(50, 40, SpectrumKind::exact_low_rank, 3, 1));
    const auto s = oracle::jacobi_svd(inst.M).s;
    Index above = 0;
    for (Index i = 0; i < s.size(); ++i) above += s(i) > 1e-10;
    EXPECT_EQ(above, 3);
    EXPECT_GE(inst.ground_truth.sigma.minCoeff(), 1.0);
    EXPECT_LE(inst.ground_truth.sigma.maxCoeff(), 10.0);
}

TEST(Generate, GeometricSpectrumRatio) {
    auto spec = spec_of(30, 30, SpectrumKind::geometric, 2, 2);
    spec.decay = 0.5;
    const auto inst = generate<double>(spec);
    for (Index i = 0; i + 1 < 30; ++i)
        EXPECT_NEAR(inst.ground_truth.sigma(i + 1) / inst.ground_truth.sigma(i), 0.5, 1e-12);
    // Measured ratios lose relative accuracy once sigma_i nears eps * sigma_0.
    const auto s = svd(inst.M).sigma;
    for (Index i = 0; i + 1 < 10; ++i) EXPECT_NEAR(s(i + 1) / s(i), 0.5, 1e-12);
}

TEST(Generate, PowerLawSpectrum) {
    auto spec = spec_of(25, 20, SpectrumKind::power_law, 2, 3);
    spec.decay = 1.5;
    const auto s = svd(generate<double>(spec).M).sigma;
    for (Index i = 0; i < 20; ++i) EXPECT_NEAR(s(i), std::pow(double(i + 1), -1.5), 1e-12);
}

TEST(Generate, GroundTruthReconstructs) {
    for (auto kind : {SpectrumKind::exact_low_rank, SpectrumKind::geometric, SpectrumKind::power_law}) {
        for (auto coh : {CoherenceKind::flat, CoherenceKind::uniform, CoherenceKind::spiky}) {
            auto spec = spec_of(40, 32, kind, 4, 4);
            spec.coherence = coh;
            spec.spike_weight = 0.6;
            const auto inst = generate<double>(spec);
            EXPECT_LE((inst.ground_truth.reconstruct() - inst.M).norm(), 1e-10 * inst.M.norm());
            EXPECT_LE(orthonormality_error(inst.ground_truth.U), 1e-12);
            EXPECT_LE(orthonormality_error(inst.ground_truth.V), 1e-12);
        }
    }
}

TEST(Generate, SpikyCoherenceIsLarge) {
    auto spec = spec_of(100, 100, SpectrumKind::exact_low_rank, 2, 5);
    spec.coherence = CoherenceKind::spiky;
    spec.spike_index = 0;
    spec.spike_weight = 0.9;
    const auto rep = mu_r(generate<double>(spec).M, 2);
    EXPECT_GE(rep.mu, 0.95 * 0.81 * 100.0 / 2.0);
    EXPECT_EQ(rep.arg_row, 0);
}

TEST(Generate, FlatCoherenceStaysSmall) {
    int small = 0, total = 0;
    for (Index n : {64, 128})
        for (Index r : {1, 4, 8})
            for (std::uint64_t seed = 0; seed < 30; ++seed) {
                const auto inst = generate<double>(spec_of(n, n, SpectrumKind::exact_low_rank, r, 100 + seed));
                small += mu_r(inst.ground_truth, r).mu <= 5.0;
                ++total;
            }
    EXPECT_GE(double(small), 0.99 * double(total));
}

TEST(Generate, UniformCoherenceIsOne) {
    for (Index n : {16, 33, 200}) {
        auto spec = spec_of(n, n + 3, SpectrumKind::exact_low_rank, 5, 6);
        spec.coherence = CoherenceKind::uniform;
        const auto inst = generate<double>(spec);
        EXPECT_NEAR(basis_incoherence(inst.ground_truth.U).mu, 1.0, 1e-10);
        EXPECT_NEAR(basis_incoherence(inst.ground_truth.V).mu, 1.0, 1e-10);
    }
}

TEST(Generate, NoiseHasRequestedRelativeSize) {
    auto spec = spec_of(60, 50, SpectrumKind::exact_low_rank, 3, 7);
    const MatrixXd clean = generate<double>(spec).M;
    spec.noise = 1e-3;
    const MatrixXd noisy = generate<double>(spec).M;
    EXPECT_NEAR((noisy - clean).norm() / clean.norm(), 1e-3, 1e-12);
}

TEST(Generate, DeterministicAndSeedSensitive) {
    const auto a = generate<double>(spec_of(20, 20, SpectrumKind::geometric, 2, 8));
    const auto b = generate<double>(spec_of(20, 20, SpectrumKind::geometric, 2, 8));
    const auto c = generate<double>(spec_of(20, 20, SpectrumKind::geometric, 2, 9));
    EXPECT_EQ(a.M, b.M);
    EXPECT_GT((a.M - c.M).norm(), 1e-3);
}

TEST(Generate, ValidatesSpec) {
    auto bad = spec_of(10, 10, SpectrumKind::exact_low_rank, 11, 0);
    EXPECT_THROW(generate<double>(bad), ArgumentError);
    bad = spec_of(10, 10, SpectrumKind::geometric, 1, 0);
    bad.decay = 1.0;
    EXPECT_THROW(generate<double>(bad), ArgumentError);
    bad.decay = 0.5;
    bad.coherence = CoherenceKind::spiky;
    bad.spike_weight = 1.5;
    EXPECT_THROW(generate<double>(bad), ArgumentError);
    bad.spike_weight = 0.5;
    bad.spike_index = 10;
    EXPECT_THROW(generate<double>(bad), ArgumentError);
    bad = spec_of(0, 10, SpectrumKind::geometric, 1, 0);
    EXPECT_THROW(generate<double>(bad), ArgumentError);
}

TEST(MeasuredProperties, AgreesWithDirectComputation) {
    auto spec = spec_of(40, 30, SpectrumKind::geometric, 3, 10);
    spec.decay = 0.6;
    const auto inst = generate<double>(spec);
    const auto f = svd(inst.M);
    const double lambda = default_lambda(f, 3);
    EXPECT_NEAR(lambda, std::pow(0.6, 4) / 1200.0, 1e-15);
    const auto p = measured_properties(inst.M, 3, lambda);
    EXPECT_NEAR(p.sigma_r, 0.36, 1e-12);
    EXPECT_NEAR(p.sigma_next, 0.216, 1e-12);
    EXPECT_NEAR(p.gap_ratio, 1.0 / 0.6, 1e-10);
    EXPECT_TRUE(p.gap_premise);
    EXPECT_NEAR(p.mu_r,
                std::max(oracle::row_scan(MatrixXd(f.U.leftCols(3))), oracle::row_scan(MatrixXd(f.V.leftCols(3)))),
                1e-10);
    double direct = 0.0;
    for (Index i = 0; i < f.sigma.size(); ++i) {
        const double s2 = f.sigma(i) * f.sigma(i);
        direct += s2 / (s2 + 40.0 * 30.0 * lambda);
    }
    EXPECT_NEAR(p.numerical_rank, direct, 1e-10);
}

TEST(MeasuredProperties, ExactRankHasInfiniteGap) {
    const auto p = measured_properties(generate<double>(spec_of(20, 20, SpectrumKind::exact_low_rank, 2, 11)).M, 2,
                                       1e-3);
    EXPECT_TRUE(std::isinf(p.gap_ratio) || p.gap_ratio > 1e12);
    EXPECT_TRUE(p.gap_premise);
}
