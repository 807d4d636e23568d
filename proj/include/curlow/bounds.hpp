#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "curlow/coherence.hpp"
#include "curlow/recovery.hpp"
#include "curlow/sampling.hpp"
#include "curlow/synth.hpp"

namespace curlow {

/// One inequality check, lhs <= rhs. Lower-bound statements (a measured
/// eigenvalue at least some level) are stored with the level as lhs and the
/// measured value as rhs, so `holds` always reads lhs <= rhs.
struct BoundReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
    bool premises_met = false;
    std::vector<std::pair<std::string, double>> params;

    double param(const std::string& key) const {
        for (const auto& [k, v] : params)
            if (k == key) return v;
        return std::numeric_limits<double>::quiet_NaN();
    }
};

/// lhs <= rhs up to a 1e-9 relative slack.
inline bool within_bound(double lhs, double rhs) {
    return lhs <= rhs + 1e-9 * std::max(1.0, std::abs(rhs));
}

inline BoundReport make_report(std::string name, double lhs, double rhs, bool premises,
                               std::vector<std::pair<std::string, double>> params = {}) {
    return BoundReport{std::move(name), lhs, rhs, within_bound(lhs, rhs), premises, std::move(params)};
}

struct SampleSize {
    Index d_min = 0;
    Index omega_min = 0;
};

/// Budgets for exact recovery of a rank-r matrix:
/// d >= 7 mu r (t + ln r), |Omega| >= 7 mu^2 r^2 (t + 2 ln r).
inline SampleSize sample_size_low_rank(double mu, Index r, double t) {
    if (!(mu >= 1.0) || r < 1 || !(t > 0.0)) throw ArgumentError("need mu >= 1, r >= 1, t > 0");
    const double lr = std::log(double(r));
    return {Index(std::ceil(7.0 * mu * double(r) * (t + lr))),
            Index(std::ceil(7.0 * mu * mu * double(r) * double(r) * (t + 2.0 * lr)))};
}

/// Budgets for the full-rank (numerically low-rank) result:
/// d >= 16 (mu_l r_num + 1)(t + ln n) and
/// |Omega| >= 7 (2 mu_l r_num + 72 (n / d)(mu_l r_num + 1)(t + ln n))^2 (t + 2 ln r).
inline SampleSize sample_size_full_rank(double mu_l, double r_num, double t, Index n, Index d, Index r) {
    if (!(mu_l > 0.0) || !(r_num > 0.0) || !(t > 0.0) || n < 1 || d < 1 || r < 1)
        throw ArgumentError("sample_size_full_rank needs positive arguments");
    const double mr = mu_l * r_num;
    const double log_n = t + std::log(double(n));
    const double inner = 2.0 * mr + 72.0 * (double(n) / double(d)) * (mr + 1.0) * log_n;
    return {Index(std::ceil(16.0 * (mr + 1.0) * log_n)),
            Index(std::ceil(7.0 * inner * inner * (t + 2.0 * std::log(double(r)))))};
}

/// d minimizing the total observation count d n + n^2 / d^2, to leading order.
inline Index optimal_d(Index n) {
    if (n < 1) throw ArgumentError("n must be positive");
    return std::max<Index>(1, Index(std::llround(std::cbrt(double(n)))));
}

inline double total_observations(Index n, Index d) {
    return double(d) * double(n) + double(n) * double(n) / (double(d) * double(d));
}

namespace detail {

template <typename Derived>
double spectral_sq(const Eigen::MatrixBase<Derived>& X) {
    if (X.size() == 0) return 0.0;
    const double s = double(spectral_norm(X));
    return s * s;
}

template <typename Scalar>
double sigma_after(const SvdFactors<Scalar>& f, Index r) {
    return r < f.sigma.size() ? double(f.sigma(r)) : 0.0;
}

template <typename Scalar>
double lambda_min_sym(const Matrix<Scalar>& G) {
    const auto eig = symmetric_eigen(G);
    return double(eig.values(eig.values.size() - 1));
}

}  // namespace detail

/// ||M - M P_Vhat||^2 <= sigma_{r+1}^2 (1 + 2m/d) and
/// ||M - P_Uhat M||^2 <= sigma_{r+1}^2 (1 + 2n/d), gated by d >= 7 mu(r) r (t + ln r).
template <typename Scalar>
std::array<BoundReport, 2> check_projection(const Matrix<Scalar>& M, const SvdFactors<Scalar>& f,
                                            const Bases<Scalar>& bases, Index r, Index d, double t) {
    const double n = double(M.rows()), m = double(M.cols());
    const double s2 = std::pow(detail::sigma_after(f, r), 2);
    const double mu = double(mu_r(f, r).mu);
    const double gate = 7.0 * mu * double(r) * (t + std::log(double(r)));
    const bool premises = double(d) >= gate;
    const auto& U = bases.U_hat;
    const auto& V = bases.V_hat;
    const double lhs_v = detail::spectral_sq(M - (M * V) * V.transpose());
    const double lhs_u = detail::spectral_sq(M - U * (U.transpose() * M));
    std::vector<std::pair<std::string, double>> params{
        {"r", double(r)}, {"d", double(d)}, {"t", t}, {"mu_r", mu}, {"d_gate", gate}, {"sigma_next", std::sqrt(s2)}};
    return {make_report("projection_V", lhs_v, s2 * (1.0 + 2.0 * m / double(d)), premises, params),
            make_report("projection_U", lhs_u, s2 * (1.0 + 2.0 * n / double(d)), premises, params)};
}

/// Delta = ||M - P_Uhat M P_Vhat||_2^2.
template <typename Scalar>
double measure_delta(const Matrix<Scalar>& M, const Bases<Scalar>& bases) {
    const auto& U = bases.U_hat;
    const auto& V = bases.V_hat;
    return detail::spectral_sq(M - U * (U.transpose() * M * V) * V.transpose());
}

enum class Regime { low_rank, full_rank };

/// Delta <= 4 sigma_{r+1}^2 (1 + (m + n)/d). The low-rank gate is
/// d >= 7 mu(r) r (t + ln r); the full-rank gate is
/// d >= 14 mu(lambda) r(M, lambda)(t + ln r) at lambda = sigma_r^2 / (mn).
template <typename Scalar>
BoundReport check_delta(const Matrix<Scalar>& M, const SvdFactors<Scalar>& f, const Bases<Scalar>& bases,
                        Index r, Index d, double t, Regime regime = Regime::low_rank) {
    const double n = double(M.rows()), m = double(M.cols());
    const double s2 = std::pow(detail::sigma_after(f, r), 2);
    double gate = 0.0;
    std::vector<std::pair<std::string, double>> params{{"r", double(r)}, {"d", double(d)}, {"t", t}};
    if (regime == Regime::low_rank) {
        const double mu = double(mu_r(f, r).mu);
        gate = 7.0 * mu * double(r) * (t + std::log(double(r)));
        params.emplace_back("mu_r", mu);
    } else {
        const Scalar lambda = default_lambda(f, r);
        const auto nr = numerical_rank_report(f, lambda);
        gate = 14.0 * double(nr.mu_lambda) * double(nr.value) * (t + std::log(double(r)));
        params.emplace_back("lambda", double(lambda));
        params.emplace_back("mu_lambda", double(nr.mu_lambda));
        params.emplace_back("numerical_rank", double(nr.value));
    }
    params.emplace_back("d_gate", gate);
    return make_report("delta", measure_delta(M, bases), 4.0 * s2 * (1.0 + (m + n) / double(d)),
                       double(d) >= gate, std::move(params));
}

/// Deterministic split of Delta used in its proof:
/// Delta <= 2 ||M - M P_Vhat||^2 + 2 ||(M - P_Uhat M) P_Vhat||^2.
template <typename Scalar>
BoundReport check_delta_triangle(const Matrix<Scalar>& M, const Bases<Scalar>& bases) {
    const auto& U = bases.U_hat;
    const auto& V = bases.V_hat;
    const Matrix<Scalar> left_resid = M - U * (U.transpose() * M);
    const double right = detail::spectral_sq(M - (M * V) * V.transpose());
    const double left = detail::spectral_sq((left_resid * V) * V.transpose());
    const double loose = detail::spectral_sq(left_resid);
    return make_report("delta_triangle", measure_delta(M, bases), 2.0 * right + 2.0 * left, true,
                       {{"right_term", right}, {"left_term", left}, {"rhs_unprojected", 2.0 * right + 2.0 * loose}});
}

enum class GammaNormalization {
    proof,     ///< gamma = lambda_min(K^T K) * mn / |Omega|
    statement  ///< gamma = lambda_min(K^T K) / |Omega|
};

inline double combine_gamma(double lambda_min, Index omega, Index n, Index m, GammaNormalization norm) {
    const double base = lambda_min / double(omega);
    return norm == GammaNormalization::proof ? base * double(n) * double(m) : base;
}

/// ||M - M_hat||^2 <= 2 (Delta + Delta / gamma). Premises: Delta measured on
/// this run, the Delta bound itself holding, and gamma >= 1/2 for the proof
/// normalization (gamma > 0 for the statement normalization).
template <typename Scalar>
BoundReport check_combine(const Matrix<Scalar>& M, const Matrix<Scalar>& M_hat, double delta, double gamma,
                          bool delta_bound_holds = true,
                          GammaNormalization norm = GammaNormalization::proof) {
    const double rhs = gamma > 0.0 ? 2.0 * (delta + delta / gamma) : std::numeric_limits<double>::infinity();
    const bool gamma_ok = norm == GammaNormalization::proof ? gamma >= 0.5 : gamma > 0.0;
    return make_report("combine", detail::spectral_sq(M - M_hat), rhs, delta_bound_holds && gamma_ok,
                       {{"delta", delta}, {"gamma", gamma},
                        {"normalization", norm == GammaNormalization::proof ? 0.0 : 1.0}});
}

/// Omega_1 Omega_1^T = V_1^T S S^T V_1 for the canonical column selection S.
template <typename Scalar>
Matrix<Scalar> omega1_gram(const SvdFactors<Scalar>& f, const IndexSet& cols, Index r) {
    const Matrix<Scalar> V1 = f.V.leftCols(r);
    Matrix<Scalar> G = Matrix<Scalar>::Zero(r, r);
    for (Index c : cols.indices) G.noalias() += V1.row(c).transpose() * V1.row(c);
    return G;
}

/// Range-finder bound ||M - P_Y M||^2 <= ||Sigma_2||^2 + ||Sigma_2 Omega_2 Omega_1^+||^2
/// for Y = M S; premise: Omega_1 = V_1^T S has full row rank.
template <typename Scalar>
BoundReport check_halko(const Matrix<Scalar>& M, const SvdFactors<Scalar>& f, const IndexSet& cols, Index r) {
    const Index k = f.sigma.size();
    const auto p = partition_svd(f, r);
    const Index d = cols.size();
    Matrix<Scalar> omega1(r, d), omega2(k - r, d);
    for (Index c = 0; c < d; ++c) {
        const Index j = cols.indices[std::size_t(c)];
        omega1.col(c) = p.V1.row(j).transpose();
        omega2.col(c) = p.V2.row(j).transpose();
    }
    const auto s1 = singular_values(omega1);
    const double smin = d >= r ? double(s1(r - 1)) : 0.0;
    const bool premises = d >= r && smin > 1e-8;

    const Matrix<Scalar> Q = range_basis(gather_columns(M, cols.indices));
    const double lhs = detail::spectral_sq(M - Q * (Q.transpose() * M));
    double rhs = std::numeric_limits<double>::infinity();
    if (premises) {
        const double tail = std::pow(p.sigma_next(), 2);
        const Matrix<Scalar> mixed = p.Sigma2.asDiagonal() * omega2 * pseudo_inverse(omega1);
        rhs = tail + detail::spectral_sq(mixed);
    }
    return make_report("halko", lhs, rhs, premises, {{"r", double(r)}, {"d", double(d)}, {"sigma_min_omega1", smin}});
}

/// lambda_min(Omega_1 Omega_1^T) >= d / (2m), gated by d >= 7 mu(r) r (t + ln r).
template <typename Scalar>
BoundReport check_omega1_spectrum(const SvdFactors<Scalar>& f, const IndexSet& cols, Index r, double t) {
    const double m = double(f.V.rows());
    const Index d = cols.size();
    const double mu = double(mu_r(f, r).mu);
    const double gate = 7.0 * mu * double(r) * (t + std::log(double(r)));
    const double lmin = detail::lambda_min_sym(omega1_gram(f, cols, r));
    return make_report("omega1_spectrum", double(d) / (2.0 * m), lmin, double(d) >= gate,
                       {{"r", double(r)}, {"d", double(d)}, {"t", t}, {"mu_r", mu}, {"d_gate", gate}});
}

/// lambda_min(K^T K) >= |Omega| / (2mn), gated by |Omega| >= 7 mu_hat^2 r^2 (t + 2 ln r).
template <typename Scalar>
BoundReport check_strong_convexity(const DesignSystem<Scalar>& sys, double t) {
    const double n = double(sys.grid_rows()), m = double(sys.grid_cols());
    const Index r = sys.rank();
    const double omega = double(sys.observations());
    const double mu = double(mu_hat(sys.bases().U_hat, sys.bases().V_hat).mu);
    const double gate = 7.0 * mu * mu * double(r * r) * (t + 2.0 * std::log(double(r)));
    return make_report("strong_convexity", omega / (2.0 * n * m), double(strong_convexity_gamma(sys)),
                       omega >= gate, {{"r", double(r)}, {"omega", omega}, {"t", t}, {"mu_hat", mu}, {"omega_gate", gate}});
}

/// Regularized Gram matrices of M and of its column (side A) or row (side B) sample.
template <typename Scalar>
struct HPair {
    Matrix<Scalar> H;
    Matrix<Scalar> H_hat;
    Axis side = Axis::cols;
    Scalar lambda{};
};

/// Side cols (A):  H = lambda I + M M^T / (mn),  H_hat = lambda I + A A^T / (dn).
/// Side rows (B):  H = lambda I + M^T M / (mn),  H_hat = lambda I + B B^T / (dm).
template <typename Scalar>
HPair<Scalar> build_h_pair(const Matrix<Scalar>& M, const Matrix<Scalar>& sample, Axis side, Scalar lambda) {
    if (!(lambda > Scalar(0))) throw ArgumentError("H is singular unless lambda > 0");
    const Scalar n = Scalar(M.rows()), m = Scalar(M.cols());
    const Scalar d = Scalar(sample.cols());
    HPair<Scalar> pair;
    pair.side = side;
    pair.lambda = lambda;
    if (side == Axis::cols) {
        if (sample.rows() != M.rows()) throw ArgumentError("column sample must have n rows");
        pair.H = (M * M.transpose()) / (m * n);
        pair.H_hat = (sample * sample.transpose()) / (d * n);
    } else {
        if (sample.rows() != M.cols()) throw ArgumentError("row sample must have m rows");
        pair.H = (M.transpose() * M) / (m * n);
        pair.H_hat = (sample * sample.transpose()) / (d * m);
    }
    pair.H.diagonal().array() += lambda;
    pair.H_hat.diagonal().array() += lambda;
    return pair;
}

/// Inputs to the sample-size premise of the Gram sandwich.
struct SandwichPremise {
    double mu_lambda = 0.0;
    double numerical_rank = 0.0;
    double t = 0.0;
    Index d = 0;
    Index n = 0;
};

/// All eigenvalues of H^{-1/2} H_hat H^{-1/2} within [1 - delta, 1 + delta],
/// gated by d >= (4 / delta^2)(mu(lambda) r(M, lambda) + 1)(t + ln n).
/// lhs = ||H^{-1/2} H_hat H^{-1/2} - I||_2, rhs = delta.
template <typename Scalar>
BoundReport check_h_sandwich(const HPair<Scalar>& pair, double delta, const SandwichPremise& premise) {
    const Matrix<Scalar> root = inverse_sqrt_spd(pair.H);
    const Matrix<Scalar> D = root * pair.H_hat * root;
    const auto eig = symmetric_eigen(((D + D.transpose()) / Scalar(2)).eval());
    const double top = double(eig.values(0));
    const double bottom = double(eig.values(eig.values.size() - 1));
    const double gate = 4.0 / (delta * delta) * (premise.mu_lambda * premise.numerical_rank + 1.0) *
                        (premise.t + std::log(double(premise.n)));
    return make_report(pair.side == Axis::cols ? "h_sandwich_A" : "h_sandwich_B",
                       std::max(1.0 - bottom, top - 1.0), delta, double(premise.d) >= gate,
                       {{"lambda", double(pair.lambda)}, {"eig_min", bottom}, {"eig_max", top},
                        {"delta", delta}, {"d", double(premise.d)}, {"d_gate", gate}});
}

/// Relative perturbation bound for the leading r-dimensional eigenspace of a
/// symmetric positive definite H under H -> H_tilde:
///   sin Theta <= Delta_H / (Delta_lambda - Delta_H / 2) * (1 + Delta_H Delta_lambda / 16),
/// Delta_lambda = min(sqrt 2 (1 - lambda_{r+1} / lambda_r), 1 / sqrt 2),
/// Delta_H = ||H^-1|| ||H - H_tilde|| / sqrt(1 - ||H^-1|| ||H - H_tilde||).
/// Premise: the square root is real and Delta_lambda >= Delta_H / 2.
template <typename Scalar>
BoundReport check_sin_theta_perturbation(const Matrix<Scalar>& H, const Matrix<Scalar>& H_tilde, Index r) {
    if (H.rows() != H_tilde.rows() || H.cols() != H_tilde.cols())
        throw ArgumentError("perturbation must match the matrix shape");
    const auto eig = symmetric_eigen(H);
    const auto eig_t = symmetric_eigen(H_tilde);
    const Index N = H.rows();
    if (r < 1 || r >= N) throw ArgumentError("subspace dimension must lie in [1, N)");
    const double lam_min = double(eig.values(N - 1));
    const bool pd = lam_min > 0.0;
    const double inv_norm = pd ? 1.0 / lam_min : std::numeric_limits<double>::infinity();
    const double pert = double(spectral_norm(H - H_tilde));
    const double prod = inv_norm * pert;
    const double gap = std::min(std::sqrt(2.0) * (1.0 - double(eig.values(r)) / double(eig.values(r - 1))),
                                1.0 / std::sqrt(2.0));
    const double lhs = double(sin_theta(eig.vectors.leftCols(r), eig_t.vectors.leftCols(r)));
    double delta_h = std::numeric_limits<double>::infinity();
    bool premises = pd && prod < 1.0;
    if (premises) {
        delta_h = prod / std::sqrt(1.0 - prod);
        premises = gap >= delta_h / 2.0;
    }
    double rhs = std::numeric_limits<double>::infinity();
    if (premises && gap > delta_h / 2.0)
        rhs = delta_h / (gap - delta_h / 2.0) * (1.0 + delta_h * gap / 16.0);
    return make_report("sin_theta_perturbation", lhs, rhs, premises,
                       {{"r", double(r)}, {"delta_lambda", gap}, {"delta_H", delta_h}});
}

/// Specialization on a Gram pair with D = H^{-1/2} H_hat H^{-1/2} and
/// delta = ||D - I||: sin Theta(top-r of H, top-r of H_hat) <= 3 sqrt(2) delta,
/// premised on delta <= 1/2 and Delta_lambda of H reaching its cap 1/sqrt 2.
template <typename Scalar>
BoundReport check_sin_theta_specialized(const HPair<Scalar>& pair, Index r) {
    const Matrix<Scalar> root = inverse_sqrt_spd(pair.H);
    const Matrix<Scalar> D = root * pair.H_hat * root;
    const double delta = double(spectral_norm(D - Matrix<Scalar>::Identity(D.rows(), D.cols())));
    const auto eig = symmetric_eigen(pair.H);
    const auto eig_hat = symmetric_eigen(pair.H_hat);
    const double ratio = double(eig.values(r)) / double(eig.values(r - 1));
    const double gap = std::min(std::sqrt(2.0) * (1.0 - ratio), 1.0 / std::sqrt(2.0));
    const bool premises = delta <= 0.5 && gap >= 1.0 / std::sqrt(2.0) - 1e-15;
    const double lhs = double(sin_theta(eig.vectors.leftCols(r), eig_hat.vectors.leftCols(r)));
    return make_report("sin_theta_specialized", lhs, 3.0 * std::sqrt(2.0) * delta, premises,
                       {{"r", double(r)}, {"delta", delta}, {"delta_lambda", gap}});
}

/// mu_hat <= (2 r(M, lambda) / r) mu(lambda) + 18 n delta^2 / r with
/// delta^2 = (4/d)(mu(lambda) r(M, lambda) + 1)(t + ln n), lambda = sigma_r^2 / (mn).
/// Premises: sigma_r >= sqrt(2) sigma_{r+1} and d >= 16 (mu(lambda) r(M, lambda) + 1)(t + ln n).
template <typename Scalar>
BoundReport check_mu_hat_bound(const SvdFactors<Scalar>& f, const Bases<Scalar>& bases, Index r, Index d, double t) {
    const double n = double(f.U.rows());
    const Scalar lambda = default_lambda(f, r);
    const auto props = measured_properties(f, r, lambda);
    const double mr = double(props.mu_lambda) * double(props.numerical_rank);
    const double log_term = t + std::log(n);
    const double delta2 = 4.0 / double(d) * (mr + 1.0) * log_term;
    const double rhs = 2.0 * double(props.numerical_rank) / double(r) * double(props.mu_lambda) +
                       18.0 * n * delta2 / double(r);
    const double gate = 16.0 * (mr + 1.0) * log_term;
    const double lhs = double(mu_hat(bases.U_hat, bases.V_hat).mu);
    return make_report("mu_hat", lhs, rhs, props.gap_premise && double(d) >= gate,
                       {{"r", double(r)}, {"d", double(d)}, {"t", t}, {"lambda", double(lambda)},
                        {"mu_lambda", double(props.mu_lambda)}, {"numerical_rank", double(props.numerical_rank)},
                        {"delta_sq", delta2}, {"d_gate", gate}, {"gap_ratio", double(props.gap_ratio)}});
}

/// mu(r) <= (2 r(M, lambda) / r) mu(lambda) at lambda = sigma_r^2 / (mn).
template <typename Scalar>
BoundReport check_incoherence_lemma(const SvdFactors<Scalar>& f, Index r) {
    const Scalar lambda = default_lambda(f, r);
    const auto props = measured_properties(f, r, lambda);
    return make_report("incoherence_lemma", double(props.mu_r),
                       2.0 * double(props.numerical_rank) / double(r) * double(props.mu_lambda),
                       props.sigma_r > Scalar(0) && props.gap_premise,
                       {{"r", double(r)}, {"lambda", double(lambda)}, {"mu_lambda", double(props.mu_lambda)},
                        {"numerical_rank", double(props.numerical_rank)}});
}

/// ||M - M_hat||^2 <= 24 sigma_{r+1}^2 (1 + (m + n)/d), premised on the gap
/// sigma_r >= sqrt(2) sigma_{r+1} and the full-rank budgets for d and |Omega|
/// at lambda = sigma_r^2 / (mn).
template <typename Scalar>
BoundReport check_full_rank_recovery(const Matrix<Scalar>& M, const SvdFactors<Scalar>& f,
                                     const Matrix<Scalar>& M_hat, Index r, Index d, Index omega, double t) {
    const double n = double(M.rows()), m = double(M.cols());
    const Scalar lambda = default_lambda(f, r);
    const auto props = measured_properties(f, r, lambda);
    const auto budget = sample_size_full_rank(double(props.mu_lambda), double(props.numerical_rank), t, M.rows(), d, r);
    const double s2 = std::pow(detail::sigma_after(f, r), 2);
    const bool premises = props.gap_premise && d >= budget.d_min && omega >= budget.omega_min;
    return make_report("full_rank_recovery", detail::spectral_sq(M - M_hat), 24.0 * s2 * (1.0 + (m + n) / double(d)),
                       premises,
                       {{"r", double(r)}, {"d", double(d)}, {"omega", double(omega)}, {"t", t},
                        {"d_gate", double(budget.d_min)}, {"omega_gate", double(budget.omega_min)},
                        {"gap_ratio", double(props.gap_ratio)}});
}

}  // namespace curlow
