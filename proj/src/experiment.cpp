#include "curlow/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>

#include "curlow/cur.hpp"
#include "curlow/harness.hpp"
#include "curlow/io.hpp"
#include "curlow/json.hpp"
#include "curlow/synth.hpp"

namespace curlow {

namespace fs = std::filesystem;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kExactTolerance = 1e-6;

RngStream trial_stream(const ExperimentConfig& cfg, std::size_t trial) {
    return RngStream{cfg.seed, std::uint64_t(trial)};
}

MatrixXd instance_matrix(const ExperimentConfig& cfg, std::size_t trial, const MatrixXd* fixed) {
    if (fixed) return *fixed;
    if (!cfg.matrix_path.empty()) return io::read_matrix(cfg.matrix_path);
    SynthSpec spec = cfg.synth;
    spec.seed = trial_stream(cfg, trial).substream(1);
    return generate<double>(spec).M;
}

std::optional<MatrixXd> load_fixed(const ExperimentConfig& cfg) {
    if (cfg.matrix_path.empty()) return std::nullopt;
    return io::read_matrix(cfg.matrix_path);
}

void prepare_dir(const fs::path& out) {
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) throw IoError("cannot create output directory " + out.string() + ": " + ec.message());
}

std::string csv_number(double v) { return io::format_double(v); }

Json budget_json(const TrialBudget& b) {
    Json j;
    j["d"] = b.d;
    j["omega"] = b.omega;
    j["d_auto"] = b.d_auto;
    j["omega_auto"] = b.omega_auto;
    if (b.d_auto || b.omega_auto) {
        j["regime"] = b.low_rank ? "low-rank" : "full-rank";
        j["d_formula"] = b.d_formula;
        j["omega_formula"] = b.omega_formula;
        j["d_capped"] = b.d_capped;
        j["omega_capped"] = b.omega_capped;
    }
    return j;
}

Json metrics_json(const RecoveryMetrics& mt) {
    Json j;
    j["rel_frobenius"] = mt.rel_frobenius;
    j["spectral_sq"] = mt.spectral_sq;
    j["full_rank_bound_rhs"] = mt.bound_rhs;
    j["full_rank_bound_holds"] = mt.bound_holds;
    return j;
}

/// Cells covered by the sampled columns, rows and entries, counted once.
double union_cells(const TrialRun& run) {
    const Index n = run.M.rows(), m = run.M.cols();
    const Index d_cols = run.cols.index.size(), d_rows = run.rows.index.size();
    std::vector<char> in_col(std::size_t(m), 0), in_row(std::size_t(n), 0);
    for (Index c : run.cols.index.indices) in_col[std::size_t(c)] = 1;
    for (Index r : run.rows.index.indices) in_row[std::size_t(r)] = 1;
    double extra = 0.0;
    for (const auto& e : run.omega.entries) extra += !in_row[std::size_t(e.i)] && !in_col[std::size_t(e.j)];
    return double(d_cols * n + d_rows * m - d_cols * d_rows) + extra;
}

double sigma_next(const SvdFactors<double>& f, Index r) { return r < f.sigma.size() ? f.sigma(r) : 0.0; }

}  // namespace

const std::vector<std::string>& known_checks() {
    static const std::vector<std::string> names = {
        "halko",         "sin_theta_perturbation", "sin_theta_specialized", "combine",
        "delta_triangle", "delta",                 "projection",            "omega1_spectrum",
        "strong_convexity", "h_sandwich",          "mu_hat",                "incoherence_lemma",
        "full_rank_recovery"};
    return names;
}

std::vector<std::string> expand_checks(const std::vector<std::string>& names) {
    const auto& known = known_checks();
    std::vector<std::string> out;
    for (const auto& n : names) {
        if (n == "all") {
            for (const auto& k : known)
                if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
            continue;
        }
        if (std::find(known.begin(), known.end(), n) == known.end())
            throw ArgumentError("unknown check '" + n + "'");
        if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
    }
    return out;
}

TrialBudget resolve_budget(const ExperimentConfig& cfg, const SvdFactors<double>& f, Budget d, Budget omega) {
    const Index n = f.U.rows(), m = f.V.rows(), r = cfg.r;
    if (r > std::min(n, m)) throw ArgumentError("target rank exceeds min(n, m)");
    TrialBudget b;
    b.d_auto = !d;
    b.omega_auto = !omega;
    b.low_rank = sigma_next(f, r) <= detail::negligible_sigma(f.sigma, n, m);
    const Index cap_d = std::min(n, m);
    const Index cap_omega = n * m;

    if (d) {
        b.d = *d;
    } else if (b.low_rank) {
        b.d_formula = double(sample_size_low_rank(std::max(1.0, mu_r(f, r).mu), r, cfg.t).d_min);
    } else {
        const auto nr = numerical_rank_report(f, default_lambda(f, r));
        b.d_formula = double(sample_size_full_rank(nr.mu_lambda, nr.value, cfg.t, n, 1, r).d_min);
    }
    if (!d) {
        b.d_capped = b.d_formula > double(cap_d);
        b.d = std::max(r, b.d_capped ? cap_d : Index(b.d_formula));
    }

    if (omega) {
        b.omega = *omega;
    } else {
        if (b.low_rank) {
            b.omega_formula = double(sample_size_low_rank(std::max(1.0, mu_r(f, r).mu), r, cfg.t).omega_min);
        } else {
            const auto nr = numerical_rank_report(f, default_lambda(f, r));
            b.omega_formula = double(sample_size_full_rank(nr.mu_lambda, nr.value, cfg.t, n, b.d, r).omega_min);
        }
        b.omega_capped = b.omega_formula > double(cap_omega);
        b.omega = std::max<Index>(1, b.omega_capped ? cap_omega : Index(b.omega_formula));
    }
    return b;
}

TrialRun execute_trial(const ExperimentConfig& cfg, std::size_t trial, const MatrixXd* fixed, Budget d,
                       Budget omega) {
    TrialRun run;
    run.trial = trial;
    run.M = instance_matrix(cfg, trial, fixed);
    require_dense(run.M, "M");
    run.f = svd(run.M);
    run.budget = resolve_budget(cfg, run.f, d, omega);
    const RngStream base = trial_stream(cfg, trial);
    run.cols = sample_columns(run.M, run.budget.d, base.substream(2));
    run.rows = sample_rows(run.M, run.budget.d, base.substream(3));
    run.omega = sample_entries(run.M, run.budget.omega, base.substream(4));
    run.bases = build_bases(run.cols.A, run.rows.B, cfg.r);
    const DesignSystem<double> sys(run.bases, run.omega);
    try {
        auto core = solve_core(sys, cfg.ridge);
        run.lambda_min_KtK = core.lambda_min_KtK;
        run.result = RecoveryResult<double>{std::move(core.Z_star), run.bases, core.lambda_min_KtK,
                                            core.residual, cfg.ridge, sys.observations()};
    } catch (const IllPosedError& e) {
        run.ill_posed = true;
        run.lambda_min_KtK = e.lambda_min();
        run.ill_posed_message = e.what();
    }
    return run;
}

RecoveryMetrics recovery_metrics(const TrialRun& run, Index r) {
    if (!run.result) throw ArgumentError("no recovery result to measure");
    const MatrixXd M_hat = run.result->dense();
    const double n = double(run.M.rows()), m = double(run.M.cols());
    RecoveryMetrics mt;
    const double scale = run.M.norm();
    mt.rel_frobenius = scale > 0.0 ? (run.M - M_hat).norm() / scale : (run.M - M_hat).norm();
    mt.spectral_sq = std::pow(spectral_norm(run.M - M_hat), 2);
    mt.bound_rhs = 24.0 * std::pow(sigma_next(run.f, r), 2) * (1.0 + (m + n) / double(run.budget.d));
    mt.bound_holds = within_bound(mt.spectral_sq, mt.bound_rhs);
    return mt;
}

std::vector<BoundReport> run_checks(const ExperimentConfig& cfg, const TrialRun& run) {
    const auto checks = expand_checks(cfg.checks);
    std::vector<BoundReport> out;
    if (checks.empty()) return out;
    const Index r = cfg.r, d = run.budget.d;
    const double t = cfg.t;
    const Regime regime = run.budget.low_rank ? Regime::low_rank : Regime::full_rank;

    std::optional<BoundReport> delta_report;
    const auto delta = [&]() -> const BoundReport& {
        if (!delta_report) delta_report = check_delta(run.M, run.f, run.bases, r, d, t, regime);
        return *delta_report;
    };

    // Gram pairs at lambda = scale * sigma_r^2 / (mn).
    std::optional<std::pair<HPair<double>, HPair<double>>> pairs;
    const auto gram_pairs = [&]() -> const std::pair<HPair<double>, HPair<double>>& {
        if (!pairs) {
            const double lambda = cfg.sandwich_lambda_scale * default_lambda(run.f, r);
            pairs.emplace(build_h_pair(run.M, run.cols.A, Axis::cols, lambda),
                          build_h_pair(run.M, run.rows.B, Axis::rows, lambda));
        }
        return *pairs;
    };
    const auto suffixed = [](BoundReport rep, const char* side) {
        rep.name += side;
        return rep;
    };

    for (const auto& name : checks) {
        if (name == "halko") {
            out.push_back(check_halko(run.M, run.f, run.cols.index, r));
        } else if (name == "sin_theta_perturbation") {
            const auto& [a, b] = gram_pairs();
            if (r < a.H.rows()) out.push_back(suffixed(check_sin_theta_perturbation(a.H, a.H_hat, r), "_A"));
            if (r < b.H.rows()) out.push_back(suffixed(check_sin_theta_perturbation(b.H, b.H_hat, r), "_B"));
        } else if (name == "sin_theta_specialized") {
            const auto& [a, b] = gram_pairs();
            if (r < a.H.rows()) out.push_back(suffixed(check_sin_theta_specialized(a, r), "_A"));
            if (r < b.H.rows()) out.push_back(suffixed(check_sin_theta_specialized(b, r), "_B"));
        } else if (name == "combine") {
            if (!run.result) continue;
            const MatrixXd M_hat = run.result->dense();
            const double measured = measure_delta(run.M, run.bases);
            const Index n = run.M.rows(), m = run.M.cols();
            const double lmin = run.result->lambda_min_KtK;
            const bool delta_ok = delta().holds;
            out.push_back(check_combine(run.M, M_hat, measured,
                                        combine_gamma(lmin, run.omega.size(), n, m, GammaNormalization::proof),
                                        delta_ok, GammaNormalization::proof));
            auto statement = check_combine(run.M, M_hat, measured,
                                           combine_gamma(lmin, run.omega.size(), n, m, GammaNormalization::statement),
                                           true, GammaNormalization::statement);
            statement.name = "combine_statement";
            out.push_back(std::move(statement));
        } else if (name == "delta_triangle") {
            out.push_back(check_delta_triangle(run.M, run.bases));
        } else if (name == "delta") {
            out.push_back(delta());
        } else if (name == "projection") {
            for (auto& rep : check_projection(run.M, run.f, run.bases, r, d, t)) out.push_back(std::move(rep));
        } else if (name == "omega1_spectrum") {
            out.push_back(check_omega1_spectrum(run.f, run.cols.index, r, t));
        } else if (name == "strong_convexity") {
            out.push_back(check_strong_convexity(DesignSystem<double>(run.bases, run.omega), t));
        } else if (name == "h_sandwich") {
            const auto& [a, b] = gram_pairs();
            const auto nr = numerical_rank_report(run.f, a.lambda);
            out.push_back(check_h_sandwich(a, cfg.sandwich_delta,
                                           SandwichPremise{nr.mu_lambda, nr.value, t, d, run.M.rows()}));
            out.push_back(check_h_sandwich(b, cfg.sandwich_delta,
                                           SandwichPremise{nr.mu_lambda, nr.value, t, d, run.M.cols()}));
        } else if (name == "mu_hat") {
            out.push_back(check_mu_hat_bound(run.f, run.bases, r, d, t));
        } else if (name == "incoherence_lemma") {
            out.push_back(check_incoherence_lemma(run.f, r));
        } else if (name == "full_rank_recovery") {
            if (!run.result) continue;
            out.push_back(check_full_rank_recovery(run.M, run.f, run.result->dense(), r, d, run.omega.size(), t));
        }
    }
    return out;
}

std::vector<TrialOutcome> run_verify_trials(const ExperimentConfig& cfg, const MatrixXd* fixed) {
    expand_checks(cfg.checks);
    return run_trials(std::size_t(cfg.trials), [&](std::size_t k) {
        const TrialRun run = execute_trial(cfg, k, fixed);
        TrialOutcome o;
        o.trial = k;
        o.budget = run.budget;
        o.ill_posed = run.ill_posed;
        o.lambda_min_KtK = run.lambda_min_KtK;
        if (run.result) o.metrics = recovery_metrics(run, cfg.r);
        o.reports = run_checks(cfg, run);
        return o;
    });
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg, const MatrixXd* fixed) {
    if (cfg.d_grid.empty() && cfg.omega_grid.empty())
        throw ArgumentError("sweep needs sweep.d_grid or sweep.omega_grid");
    struct Point {
        Budget d, omega;
    };
    std::vector<Point> points;
    if (!cfg.d_grid.empty() && !cfg.omega_grid.empty()) {
        for (Index d : cfg.d_grid)
            for (Index o : cfg.omega_grid) points.push_back({d, o});
    } else if (!cfg.d_grid.empty()) {
        for (Index d : cfg.d_grid) points.push_back({d, cfg.omega});
    } else {
        for (Index o : cfg.omega_grid) points.push_back({cfg.d, o});
    }

    std::vector<SweepRow> rows;
    for (const auto& p : points) {
        struct One {
            TrialBudget budget;
            bool ill_posed;
            std::optional<RecoveryMetrics> metrics;
            Index n, m;
            double union_cells;
        };
        const auto results = run_trials(std::size_t(cfg.trials), [&](std::size_t k) {
            Budget omega = p.omega;
            if (!omega && p.d) {
                // Entry budget that keeps |Omega| on the n^2 / d^2 scaling curve.
                const MatrixXd M = instance_matrix(cfg, k, fixed);
                const Index nm = M.rows() * M.cols();
                const Index scaled = Index(std::ceil(double(nm) / (double(*p.d) * double(*p.d))));
                omega = std::min(nm, std::max(4 * cfg.r * cfg.r, scaled));
            }
            const TrialRun run = execute_trial(cfg, k, fixed, p.d, omega);
            One o{run.budget, run.ill_posed, std::nullopt, run.M.rows(), run.M.cols(), union_cells(run)};
            if (run.result) o.metrics = recovery_metrics(run, cfg.r);
            return o;
        });
        SweepRow row;
        row.d = results.front().budget.d;
        row.omega = results.front().budget.omega;
        row.trials = results.size();
        std::size_t ok = 0, success = 0, holds = 0;
        double sum = 0.0, worst = 0.0, total = 0.0, unions = 0.0;
        for (const auto& o : results) {
            total += double(o.budget.d) * double(o.n + o.m) + double(o.budget.omega);
            unions += o.union_cells;
            if (o.ill_posed) {
                ++row.ill_posed;
                continue;
            }
            ++ok;
            sum += o.metrics->rel_frobenius;
            worst = std::max(worst, o.metrics->rel_frobenius);
            success += o.metrics->rel_frobenius <= kExactTolerance;
            holds += o.metrics->bound_holds;
        }
        row.mean_rel_error = ok ? sum / double(ok) : kNaN;
        row.max_rel_error = ok ? worst : kNaN;
        row.success_rate = double(success) / double(row.trials);
        row.bound_holds_rate = ok ? double(holds) / double(ok) : kNaN;
        row.measured_total = total / double(row.trials);
        row.union_total = unions / double(row.trials);
        row.analytic_total = total_observations(results.front().n, row.d);
        rows.push_back(row);
    }
    return rows;
}

int cmd_gen(const ExperimentConfig& cfg, const fs::path& out) {
    if (!cfg.matrix_path.empty()) throw ArgumentError("gen builds a synthetic matrix; drop input.matrix");
    prepare_dir(out);
    SynthSpec spec = cfg.synth;
    spec.seed = trial_stream(cfg, 0).substream(1);
    const auto inst = generate<double>(spec);
    const auto f = svd(inst.M);
    io::write_matrix(inst.M, out / "M.mtx", io::MatrixFormat::matrix_market);

    std::ostringstream spectrum;
    spectrum << "index,sigma_true,sigma_measured\n";
    for (Index k = 0; k < f.sigma.size(); ++k) {
        const double truth = k < inst.ground_truth.sigma.size() ? inst.ground_truth.sigma(k) : 0.0;
        spectrum << k << ',' << csv_number(truth) << ',' << csv_number(f.sigma(k)) << '\n';
    }
    io::write_text(out / "spectrum.csv", spectrum.str());

    const Index r = cfg.r;
    if (r > f.sigma.size()) throw ArgumentError("target rank exceeds min(n, m)");
    const double lambda = default_lambda(f, r);
    const auto props = measured_properties(f, r, lambda);
    Json j;
    j["config"] = cfg.to_json();
    j["shape"] = {inst.M.rows(), inst.M.cols()};
    j["mu_r"] = to_json(mu_r(f, r));
    j["numerical_rank"] = to_json(numerical_rank_report(f, lambda));
    j["sigma_r"] = props.sigma_r;
    j["sigma_next"] = props.sigma_next;
    j["gap_ratio"] = std::isfinite(props.gap_ratio) ? Json(props.gap_ratio) : Json(nullptr);
    j["gap_premise"] = props.gap_premise;
    io::write_text(out / "properties.json", dump(j));
    return exit_ok;
}

int cmd_recover(const ExperimentConfig& cfg, const fs::path& out, bool write_mhat) {
    prepare_dir(out);
    const auto fixed = load_fixed(cfg);
    const TrialRun run = execute_trial(cfg, 0, fixed ? &*fixed : nullptr);
    io::write_omega(run.omega, out / "omega.csv");
    io::write_index_set(run.cols.index, out / "col_idx.txt");
    io::write_index_set(run.rows.index, out / "row_idx.txt");

    Json j;
    j["config"] = cfg.to_json();
    j["shape"] = {run.M.rows(), run.M.cols()};
    j["budget"] = budget_json(run.budget);
    if (run.ill_posed) {
        j["status"] = "ill_posed";
        j["lambda_min_KtK"] = run.lambda_min_KtK;
        j["message"] = run.ill_posed_message;
        io::write_text(out / "recovery.json", dump(j));
        std::cerr << "error: " << run.ill_posed_message << '\n';
        return exit_ill_posed;
    }
    j["status"] = "ok";
    j["recovery"] = to_json(*run.result);
    j["metrics"] = metrics_json(recovery_metrics(run, cfg.r));
    io::write_text(out / "recovery.json", dump(j));
    if (write_mhat) io::write_matrix(run.result->dense(), out / "M_hat.mtx", io::MatrixFormat::matrix_market);
    return exit_ok;
}

int cmd_verify(const ExperimentConfig& cfg, const fs::path& out, ReportFormat format) {
    prepare_dir(out);
    const auto fixed = load_fixed(cfg);
    const auto outcomes = run_verify_trials(cfg, fixed ? &*fixed : nullptr);
    std::vector<std::vector<BoundReport>> per_trial;
    per_trial.reserve(outcomes.size());
    for (const auto& o : outcomes) per_trial.push_back(o.reports);
    const auto summary = summarize(per_trial);

    if (format == ReportFormat::json) {
        Json j;
        j["config"] = cfg.to_json();
        Json trials = Json::array();
        for (const auto& o : outcomes) {
            Json t;
            t["trial"] = o.trial;
            t["budget"] = budget_json(o.budget);
            t["ill_posed"] = o.ill_posed;
            t["lambda_min_KtK"] = o.lambda_min_KtK;
            if (o.metrics) t["metrics"] = metrics_json(*o.metrics);
            Json reps = Json::array();
            for (const auto& rep : o.reports) reps.push_back(to_json(rep));
            t["reports"] = std::move(reps);
            trials.push_back(std::move(t));
        }
        j["trials"] = std::move(trials);
        Json agg = Json::array();
        for (const auto& s : summary) agg.push_back(to_json(s));
        j["summary"] = std::move(agg);
        io::write_text(out / "verify.json", dump(j));
    } else {
        std::ostringstream rows;
        rows << "trial,check,lhs,rhs,holds,premises_met\n";
        for (const auto& o : outcomes)
            for (const auto& rep : o.reports)
                rows << o.trial << ',' << rep.name << ',' << csv_number(rep.lhs) << ',' << csv_number(rep.rhs) << ','
                     << int(rep.holds) << ',' << int(rep.premises_met) << '\n';
        io::write_text(out / "verify.csv", rows.str());
        std::ostringstream agg;
        agg << "check,trials,premise_trials,holds_with_premises,holds_all,premise_rate,overall_rate\n";
        for (const auto& s : summary)
            agg << s.name << ',' << s.trials << ',' << s.premise_trials << ',' << s.holds_with_premises << ','
                << s.holds_all << ',' << csv_number(s.premise_rate()) << ',' << csv_number(s.overall_rate()) << '\n';
        io::write_text(out / "verify_summary.csv", agg.str());
        io::write_text(out / "verify_config.json", dump(cfg.to_json()));
    }
    for (const auto& s : summary)
        std::cout << s.name << ": " << s.holds_with_premises << '/' << s.premise_trials
                  << " hold under premises, " << s.holds_all << '/' << s.trials << " overall\n";
    return exit_ok;
}

int cmd_sweep(const ExperimentConfig& cfg, const fs::path& out, ReportFormat format) {
    prepare_dir(out);
    const auto fixed = load_fixed(cfg);
    const auto rows = run_sweep(cfg, fixed ? &*fixed : nullptr);
    std::ostringstream csv;
    csv << "d,omega,trials,ill_posed,mean_rel_error,max_rel_error,success_rate,bound_holds_rate,"
           "total_observations,union_observations,analytic_total_observations\n";
    for (const auto& r : rows)
        csv << r.d << ',' << r.omega << ',' << r.trials << ',' << r.ill_posed << ',' << csv_number(r.mean_rel_error)
            << ',' << csv_number(r.max_rel_error) << ',' << csv_number(r.success_rate) << ','
            << csv_number(r.bound_holds_rate) << ',' << csv_number(r.measured_total) << ','
            << csv_number(r.union_total) << ','
            << csv_number(r.analytic_total) << '\n';
    io::write_text(out / "sweep.csv", csv.str());
    if (format == ReportFormat::json) {
        Json j;
        j["config"] = cfg.to_json();
        Json table = Json::array();
        for (const auto& r : rows) {
            Json row;
            row["d"] = r.d;
            row["omega"] = r.omega;
            row["trials"] = r.trials;
            row["ill_posed"] = r.ill_posed;
            row["mean_rel_error"] = std::isfinite(r.mean_rel_error) ? Json(r.mean_rel_error) : Json(nullptr);
            row["max_rel_error"] = std::isfinite(r.max_rel_error) ? Json(r.max_rel_error) : Json(nullptr);
            row["success_rate"] = r.success_rate;
            row["bound_holds_rate"] = std::isfinite(r.bound_holds_rate) ? Json(r.bound_holds_rate) : Json(nullptr);
            row["total_observations"] = r.measured_total;
            row["union_observations"] = r.union_total;
            row["analytic_total_observations"] = r.analytic_total;
            table.push_back(std::move(row));
        }
        j["rows"] = std::move(table);
        if (!rows.empty()) {
            const auto best = std::min_element(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
                return a.analytic_total < b.analytic_total;
            });
            j["analytic_argmin_d"] = best->d;
        }
        io::write_text(out / "sweep.json", dump(j));
    }
    return exit_ok;
}

int cmd_cur(const ExperimentConfig& cfg, const fs::path& out) {
    if (cfg.cur_c < 1 || cfg.cur_r_rows < 1) throw ArgumentError("cur needs cur.c >= 1 and cur.r_rows >= 1");
    prepare_dir(out);
    const MatrixXd M = instance_matrix(cfg, 0, nullptr);
    const auto f = cur_decompose(M, cfg.cur_c, cfg.cur_r_rows, trial_stream(cfg, 0).substream(5));
    const auto rep = cur_error_ratio(M, f, cfg.cur_k);
    Json j;
    j["config"] = cfg.to_json();
    j["shape"] = {M.rows(), M.cols()};
    j["k"] = cfg.cur_k;
    j["cur"] = to_json(f, rep);
    j["col_idx"] = f.col_idx.indices;
    j["row_idx"] = f.row_idx.indices;
    io::write_text(out / "cur.json", dump(j));
    return exit_ok;
}

}  // namespace curlow
