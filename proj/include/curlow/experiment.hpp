#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "curlow/bounds.hpp"
#include "curlow/config.hpp"
#include "curlow/recovery.hpp"

namespace curlow {

enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_ill_posed = 2, exit_io = 3 };

enum class ReportFormat { json, csv };

/// Check identifiers accepted in `checks`; "all" expands to the full list.
const std::vector<std::string>& known_checks();
std::vector<std::string> expand_checks(const std::vector<std::string>& names);

/// Sample budgets of one trial.
struct TrialBudget {
    Index d = 0;
    Index omega = 0;
    bool d_auto = false;
    bool omega_auto = false;
    bool d_capped = false;      ///< the formula asked for more than min(n, m)
    bool omega_capped = false;  ///< the formula asked for more than n m
    bool low_rank = false;      ///< sigma_{r+1} is negligible; low-rank formulas apply
    double d_formula = 0.0;
    double omega_formula = 0.0;
};

/// Resolves "auto" budgets from the measured incoherence of M.
TrialBudget resolve_budget(const ExperimentConfig& cfg, const SvdFactors<double>& f, Budget d, Budget omega);

/// Everything one trial produced. Streams: trial k uses RngStream{seed, k};
/// substream 1 generates M, 2 draws columns, 3 rows, 4 entries.
struct TrialRun {
    std::size_t trial = 0;
    MatrixXd M;
    SvdFactors<double> f;
    TrialBudget budget;
    ColumnSample<double> cols;
    RowSample<double> rows;
    OmegaSet<double> omega;
    Bases<double> bases;
    std::optional<RecoveryResult<double>> result;
    bool ill_posed = false;
    double lambda_min_KtK = 0.0;
    std::string ill_posed_message;
};

/// Error metrics of a finished recovery.
struct RecoveryMetrics {
    double rel_frobenius = 0.0;   ///< ||M - M_hat||_F / ||M||_F
    double spectral_sq = 0.0;     ///< ||M - M_hat||_2^2
    double bound_rhs = 0.0;       ///< 24 sigma_{r+1}^2 (1 + (m + n)/d)
    bool bound_holds = false;
};

RecoveryMetrics recovery_metrics(const TrialRun& run, Index r);

/// Builds the trial's instance (or uses `fixed`), samples, and recovers.
/// An ill-posed core solve is recorded, not thrown.
TrialRun execute_trial(const ExperimentConfig& cfg, std::size_t trial, const MatrixXd* fixed,
                       Budget d, Budget omega);
inline TrialRun execute_trial(const ExperimentConfig& cfg, std::size_t trial, const MatrixXd* fixed = nullptr) {
    return execute_trial(cfg, trial, fixed, cfg.d, cfg.omega);
}

/// Runs the configured checks against a finished trial.
std::vector<BoundReport> run_checks(const ExperimentConfig& cfg, const TrialRun& run);

struct TrialOutcome {
    std::size_t trial = 0;
    TrialBudget budget;
    bool ill_posed = false;
    double lambda_min_KtK = 0.0;
    std::optional<RecoveryMetrics> metrics;
    std::vector<BoundReport> reports;
};

/// cfg.trials trials in parallel, ordered by trial index.
std::vector<TrialOutcome> run_verify_trials(const ExperimentConfig& cfg, const MatrixXd* fixed = nullptr);

/// One row of the sample-budget sweep. Every grid point reuses trial
/// indices 0..trials-1, so all points see the same instances. With an
/// "auto" d the row reports the budget resolved for trial 0.
struct SweepRow {
    Index d = 0;
    Index omega = 0;
    std::size_t trials = 0;
    std::size_t ill_posed = 0;
    double mean_rel_error = 0.0;  ///< over well-posed trials; NaN if none
    double max_rel_error = 0.0;
    double success_rate = 0.0;    ///< rel error <= 1e-6
    double bound_holds_rate = 0.0;
    double measured_total = 0.0;  ///< d n + d m + |Omega|
    double union_total = 0.0;     ///< distinct cells seen through A, B and Omega together
    double analytic_total = 0.0;  ///< d n + n^2 / d^2
};

std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg, const MatrixXd* fixed = nullptr);

/// Commands behind the CLI. Each writes its artifacts into `out` and returns
/// an exit code; exceptions propagate to the caller.
int cmd_gen(const ExperimentConfig& cfg, const std::filesystem::path& out);
int cmd_recover(const ExperimentConfig& cfg, const std::filesystem::path& out, bool write_mhat);
int cmd_verify(const ExperimentConfig& cfg, const std::filesystem::path& out, ReportFormat format);
int cmd_sweep(const ExperimentConfig& cfg, const std::filesystem::path& out, ReportFormat format);
int cmd_cur(const ExperimentConfig& cfg, const std::filesystem::path& out);

}  // namespace curlow
