#include <gtest/gtest.h>

#include <cstdlib>

#include "curlow/experiment.hpp"

using namespace curlow;

namespace {

ExperimentConfig experiment(const std::string& text) { return ExperimentConfig::from(Config::parse(text)); }

}  // namespace

TEST(ResolveBudget, LowRankUsesMeasuredIncoherence) {
    const auto cfg = experiment("synth.n = 120\nsynth.coherence = \"uniform\"\nr = 3\n");
    const auto run = execute_trial(cfg, 0);
    const auto expected = sample_size_low_rank(std::max(1.0, mu_r(run.f, 3).mu), 3, 3.0);
    EXPECT_TRUE(run.budget.low_rank);
    EXPECT_TRUE(run.budget.d_auto);
    EXPECT_EQ(run.budget.d, expected.d_min);
    EXPECT_EQ(run.budget.omega, expected.omega_min);
    EXPECT_FALSE(run.budget.d_capped);
}

TEST(ResolveBudget, CapsAtMatrixSize) {
    const auto cfg = experiment("synth.n = 30\nsynth.m = 20\nr = 4\n");
    const auto run = execute_trial(cfg, 0);
    EXPECT_LE(run.budget.d, 20);
    EXPECT_LE(run.budget.omega, 600);
    EXPECT_TRUE(run.budget.d_capped || run.budget.d_formula <= 20.0);
}

TEST(ResolveBudget, FullRankFormulas) {
    const auto cfg = experiment("synth.kind = \"geometric\"\nsynth.n = 50\nsynth.decay = 0.3\nr = 1\n");
    const auto run = execute_trial(cfg, 0);
    EXPECT_FALSE(run.budget.low_rank);
    const double lambda = default_lambda(run.f, 1);
    const auto nr = numerical_rank_report(run.f, lambda);
    const auto s = sample_size_full_rank(nr.mu_lambda, nr.value, 3.0, 50, run.budget.d, 1);
    EXPECT_DOUBLE_EQ(run.budget.omega_formula, double(s.omega_min));
    EXPECT_EQ(run.budget.omega, std::min<Index>(2500, s.omega_min));
}

TEST(ExecuteTrial, ExplicitBudgetsAndStreams) {
    const auto cfg = experiment("synth.n = 40\nr = 2\nd = 10\nomega = 100\nseed = 3\n");
    const auto a = execute_trial(cfg, 1);
    const auto b = execute_trial(cfg, 1);
    const auto c = execute_trial(cfg, 2);
    EXPECT_EQ(a.budget.d, 10);
    EXPECT_EQ(a.omega.size(), 100);
    EXPECT_EQ(a.M, b.M);
    EXPECT_EQ(a.cols.index.indices, b.cols.index.indices);
    EXPECT_NE(a.M, c.M);
    ASSERT_TRUE(a.result.has_value());
    EXPECT_LE(recovery_metrics(a, 2).rel_frobenius, 1e-8);
}

TEST(ExecuteTrial, RecordsIllPosedSolve) {
    const auto cfg = experiment("synth.n = 20\nr = 3\nd = 3\nomega = 2\n");
    const auto run = execute_trial(cfg, 0);
    EXPECT_TRUE(run.ill_posed);
    EXPECT_FALSE(run.result.has_value());
    EXPECT_FALSE(run.ill_posed_message.empty());
    const auto reports = run_checks(experiment("synth.n = 20\nr = 3\nd = 3\nomega = 2\nchecks = \"all\"\n"), run);
    for (const auto& rep : reports) {
        EXPECT_NE(rep.name, "combine");
        EXPECT_NE(rep.name, "full_rank_recovery");
    }
}

TEST(RunChecks, AllProducesEveryFamily) {
    const auto cfg = experiment(
        "synth.kind = \"geometric\"\nsynth.n = 40\nsynth.decay = 0.5\nr = 2\nd = 20\nomega = 600\nchecks = \"all\"\n");
    const auto reports = run_checks(cfg, execute_trial(cfg, 0));
    std::vector<std::string> names;
    for (const auto& r : reports) names.push_back(r.name);
    for (const char* expected : {"halko", "sin_theta_perturbation_A", "sin_theta_perturbation_B",
                                 "sin_theta_specialized_A", "combine", "combine_statement", "delta_triangle", "delta",
                                 "projection_U", "projection_V", "omega1_spectrum", "strong_convexity",
                                 "h_sandwich_A", "h_sandwich_B", "mu_hat", "incoherence_lemma", "full_rank_recovery"})
        EXPECT_NE(std::find(names.begin(), names.end(), expected), names.end()) << expected;
}

TEST(RunVerifyTrials, IndependentOfThreadCount) {
    const auto cfg = experiment(
        "synth.kind = \"power-law\"\nsynth.n = 40\nsynth.decay = 1\nr = 2\nd = 12\nomega = 300\ntrials = 6\n"
        "checks = \"delta,halko,strong_convexity\"\n");
    ::setenv("CURLOW_THREADS", "1", 1);
    const auto serial = run_verify_trials(cfg);
    ::setenv("CURLOW_THREADS", "3", 1);
    const auto parallel = run_verify_trials(cfg);
    ::unsetenv("CURLOW_THREADS");
    ASSERT_EQ(serial.size(), parallel.size());
    for (std::size_t k = 0; k < serial.size(); ++k) {
        EXPECT_EQ(serial[k].trial, k);
        ASSERT_EQ(serial[k].reports.size(), parallel[k].reports.size());
        for (std::size_t i = 0; i < serial[k].reports.size(); ++i) {
            EXPECT_EQ(serial[k].reports[i].lhs, parallel[k].reports[i].lhs);
            EXPECT_EQ(serial[k].reports[i].rhs, parallel[k].reports[i].rhs);
        }
    }
}

TEST(RunSweep, GridRowsAndTotals) {
    const auto cfg = experiment(
        "synth.n = 64\nsynth.coherence = \"uniform\"\nr = 2\ntrials = 2\nsweep.d_grid = \"4,8,16\"\n");
    const auto rows = run_sweep(cfg);
    ASSERT_EQ(rows.size(), 3u);
    for (const auto& r : rows) {
        EXPECT_EQ(r.omega, std::min<Index>(4096, std::max<Index>(16, (4096 + r.d * r.d - 1) / (r.d * r.d))));
        EXPECT_DOUBLE_EQ(r.measured_total, double(r.d * 64 * 2 + r.omega));
        EXPECT_LE(r.union_total, r.measured_total);
        EXPECT_DOUBLE_EQ(r.analytic_total, total_observations(64, r.d));
    }
    EXPECT_THROW(run_sweep(experiment("r = 1\n")), ArgumentError);
}

TEST(RunSweep, CartesianGrid) {
    const auto cfg = experiment(
        "synth.n = 30\nr = 1\ntrials = 1\nsweep.d_grid = \"2,4\"\nsweep.omega_grid = \"50,100,200\"\n");
    const auto rows = run_sweep(cfg);
    ASSERT_EQ(rows.size(), 6u);
    EXPECT_EQ(rows[0].d, 2);
    EXPECT_EQ(rows[0].omega, 50);
    EXPECT_EQ(rows[5].d, 4);
    EXPECT_EQ(rows[5].omega, 200);
}
