#pragma once

#include <algorithm>
#include <limits>
#include <optional>

#include "curlow/linalg.hpp"

namespace curlow {

/// Incoherence of one or two orthonormal factors: the largest scaled squared
/// row norm, (N / r) * max_i ||row_i||^2. A value of 1 means perfectly spread
/// rows; N / r means a factor aligned with a canonical axis.
template <typename Scalar>
struct CoherenceReport {
    Scalar mu{};
    Index arg_row = 0;              ///< row attaining the maximum on the left factor
    std::optional<Index> arg_col;   ///< row attaining the maximum on the right factor
    Index r = 0;
};

template <typename Scalar>
struct NumericalRankReport {
    Scalar lambda{};
    Scalar value{};        ///< r(M, lambda) = sum sigma_i^2 / (sigma_i^2 + mn lambda)
    Scalar mu_lambda{};    ///< incoherence relative to lambda; NaN until filled
    Vector<Scalar> S_diag; ///< sigma_i^2 + mn lambda
};

namespace detail {

template <typename Derived>
std::pair<typename Derived::Scalar, Index> scaled_max_row(const Eigen::MatrixBase<Derived>& Q,
                                                          typename Derived::Scalar scale) {
    Index arg = 0;
    const auto norms = Q.rowwise().squaredNorm().eval();
    const auto peak = norms.maxCoeff(&arg);
    return {scale * peak, arg};
}

/// Singular values at or below this are exact zeros for the weighted
/// quantities at lambda = 0.
template <typename Scalar>
Scalar negligible_sigma(const Vector<Scalar>& sigma, Index n, Index m) {
    if (sigma.size() == 0) return Scalar(0);
    return Scalar(std::max(n, m)) * std::numeric_limits<Scalar>::epsilon() * sigma(0);
}

}  // namespace detail

template <typename Derived>
auto basis_incoherence(const Eigen::MatrixBase<Derived>& Q) -> CoherenceReport<typename Derived::Scalar> {
    using Scalar = typename Derived::Scalar;
    require_orthonormal(Q);
    auto [mu, arg] = detail::scaled_max_row(Q, Scalar(Q.rows()) / Scalar(Q.cols()));
    return {mu, arg, std::nullopt, Q.cols()};
}

/// max of the incoherence of a left and a right orthonormal factor of equal rank.
template <typename DerivedU, typename DerivedV>
auto pair_incoherence(const Eigen::MatrixBase<DerivedU>& U, const Eigen::MatrixBase<DerivedV>& V)
    -> CoherenceReport<typename DerivedU::Scalar> {
    if (U.cols() != V.cols()) throw ArgumentError("factors must have the same number of columns");
    const auto left = basis_incoherence(U);
    const auto right = basis_incoherence(V);
    return {std::max(left.mu, right.mu), left.arg_row, right.arg_row, U.cols()};
}

/// mu(r) from the leading r singular vectors of M.
template <typename Scalar>
CoherenceReport<Scalar> mu_r(const SvdFactors<Scalar>& f, Index r) {
    const auto p = partition_svd(f, r);
    return pair_incoherence(p.U1, p.V1);
}

template <typename Derived>
auto mu_r(const Eigen::MatrixBase<Derived>& M, Index r) -> CoherenceReport<typename Derived::Scalar> {
    return mu_r(svd(M), r);
}

/// Incoherence of the estimated bases (U_hat, V_hat).
template <typename DerivedU, typename DerivedV>
auto mu_hat(const Eigen::MatrixBase<DerivedU>& U_hat, const Eigen::MatrixBase<DerivedV>& V_hat)
    -> CoherenceReport<typename DerivedU::Scalar> {
    return pair_incoherence(U_hat, V_hat);
}

template <typename Scalar>
NumericalRankReport<Scalar> numerical_rank(const Vector<Scalar>& sigma, Index n, Index m, Scalar lambda) {
    if (!(lambda >= Scalar(0))) throw ArgumentError("lambda must be nonnegative");
    const Scalar shift = Scalar(n) * Scalar(m) * lambda;
    const Scalar zero_cut = detail::negligible_sigma(sigma, n, m);
    NumericalRankReport<Scalar> rep;
    rep.lambda = lambda;
    rep.mu_lambda = std::numeric_limits<Scalar>::quiet_NaN();
    rep.S_diag = sigma.array().square() + shift;
    rep.value = Scalar(0);
    for (Index k = 0; k < sigma.size(); ++k) {
        if (sigma(k) <= zero_cut) continue;
        const Scalar s2 = sigma(k) * sigma(k);
        rep.value += s2 / (s2 + shift);
    }
    return rep;
}

/// mu(lambda): U rows weighted by sigma S^{-1/2} scaled by n / r(M, lambda),
/// V rows likewise scaled by m / r(M, lambda).
template <typename Scalar>
Scalar mu_lambda(const SvdFactors<Scalar>& f, Scalar lambda) {
    const Index n = f.U.rows(), m = f.V.rows();
    const auto rank = numerical_rank(f.sigma, n, m, lambda);
    if (rank.value <= Scalar(0)) throw ArgumentError("mu(lambda) is undefined for the zero matrix");
    const Scalar zero_cut = detail::negligible_sigma(f.sigma, n, m);
    Vector<Scalar> w = Vector<Scalar>::Zero(f.sigma.size());
    for (Index k = 0; k < w.size(); ++k)
        if (f.sigma(k) > zero_cut) w(k) = f.sigma(k) / std::sqrt(rank.S_diag(k));
    const Matrix<Scalar> Uw = f.U * w.asDiagonal();
    const Matrix<Scalar> Vw = f.V * w.asDiagonal();
    const Scalar left = detail::scaled_max_row(Uw, Scalar(n) / rank.value).first;
    const Scalar right = detail::scaled_max_row(Vw, Scalar(m) / rank.value).first;
    return std::max(left, right);
}

template <typename Scalar>
NumericalRankReport<Scalar> numerical_rank_report(const SvdFactors<Scalar>& f, Scalar lambda) {
    auto rep = numerical_rank(f.sigma, f.U.rows(), f.V.rows(), lambda);
    if (rep.value > Scalar(0)) rep.mu_lambda = mu_lambda(f, lambda);
    return rep;
}

template <typename Derived>
auto numerical_rank(const Eigen::MatrixBase<Derived>& M, typename Derived::Scalar lambda)
    -> NumericalRankReport<typename Derived::Scalar> {
    return numerical_rank_report(svd(M), lambda);
}

/// Sine of the largest principal angle between span(Q1) and span(Q2),
/// ||(I - Q2 Q2^T) Q1||_2, evaluated without forming the N x N projector.
template <typename Derived1, typename Derived2>
auto sin_theta(const Eigen::MatrixBase<Derived1>& Q1, const Eigen::MatrixBase<Derived2>& Q2)
    -> typename Derived1::Scalar {
    using Scalar = typename Derived1::Scalar;
    if (Q1.rows() != Q2.rows() || Q1.cols() != Q2.cols())
        throw ArgumentError("subspace bases must have identical shapes");
    require_orthonormal(Q1, "first basis");
    require_orthonormal(Q2, "second basis");
    const Matrix<Scalar> residual = Q1 - Q2 * (Q2.transpose() * Q1);
    return std::clamp(spectral_norm(residual), Scalar(0), Scalar(1));
}

}  // namespace curlow
