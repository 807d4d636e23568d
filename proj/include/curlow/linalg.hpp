#pragma once

#include <algorithm>
#include <limits>

#include "curlow/types.hpp"

namespace curlow {

/// Thin singular value decomposition M = U diag(sigma) V^T with k = min(n, m)
/// columns in U and V and sigma sorted nonincreasing.
template <typename Scalar>
struct SvdFactors {
    Matrix<Scalar> U;
    Vector<Scalar> sigma;
    Matrix<Scalar> V;

    Index rank_cut_max() const { return sigma.size(); }
    Matrix<Scalar> reconstruct() const { return U * sigma.asDiagonal() * V.transpose(); }
};

/// Rank-r split of an SVD into the leading block (U1, Sigma1, V1) and the
/// trailing block (U2, Sigma2, V2).
template <typename Scalar>
struct SvdPartition {
    Index r = 0;
    Matrix<Scalar> U1, U2;
    Vector<Scalar> Sigma1, Sigma2;
    Matrix<Scalar> V1, V2;

    /// Largest trailing singular value, or zero when the trailing block is empty.
    Scalar sigma_next() const { return Sigma2.size() ? Sigma2(0) : Scalar(0); }
};

/// Eigenpairs of a symmetric matrix, eigenvalues in descending order.
template <typename Scalar>
struct SymmetricEigen {
    Vector<Scalar> values;
    Matrix<Scalar> vectors;
};

namespace detail {

/// Flips the sign of `v` (and of `partner`, when given) so that the entry of
/// largest magnitude is positive. Entries within a relative 1e-12 of the
/// maximum count as ties; the lowest index wins.
template <typename VecA, typename VecB>
void apply_sign_convention(VecA&& v, VecB&& partner) {
    using Scalar = typename std::decay_t<VecA>::Scalar;
    if (v.size() == 0) return;
    const Scalar peak = v.cwiseAbs().maxCoeff();
    if (peak == Scalar(0)) return;
    const Scalar cut = peak * (Scalar(1) - Scalar(1e-12));
    for (Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) >= cut) {
            if (v(i) < Scalar(0)) {
                v = -v;
                partner = -partner;
            }
            return;
        }
    }
}

template <typename VecA>
void apply_sign_convention(VecA&& v) {
    Vector<typename std::decay_t<VecA>::Scalar> unused;
    apply_sign_convention(std::forward<VecA>(v), unused);
}

}  // namespace detail

template <typename Derived>
auto svd(const Eigen::MatrixBase<Derived>& M) -> SvdFactors<typename Derived::Scalar> {
    using Scalar = typename Derived::Scalar;
    require_dense(M);
    Matrix<Scalar> dense = M;
    Eigen::BDCSVD<Matrix<Scalar>> solver(dense, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (solver.info() != Eigen::Success) {
        const double residual =
            solver.matrixU().size()
                ? double((solver.matrixU() * solver.singularValues().asDiagonal() *
                          solver.matrixV().transpose() - dense).norm())
                : std::numeric_limits<double>::quiet_NaN();
        throw ConvergenceError("SVD did not converge", residual);
    }
    SvdFactors<Scalar> f{solver.matrixU(), solver.singularValues(), solver.matrixV()};
    for (Index k = 0; k < f.sigma.size(); ++k)
        detail::apply_sign_convention(f.U.col(k), f.V.col(k));
    return f;
}

template <typename Scalar>
SvdPartition<Scalar> partition_svd(const SvdFactors<Scalar>& f, Index r) {
    const Index k = f.sigma.size();
    if (r < 1 || r > k)
        throw ArgumentError("partition rank " + std::to_string(r) + " outside [1, " +
                            std::to_string(k) + "]");
    SvdPartition<Scalar> p;
    p.r = r;
    p.U1 = f.U.leftCols(r);
    p.U2 = f.U.rightCols(k - r);
    p.Sigma1 = f.sigma.head(r);
    p.Sigma2 = f.sigma.tail(k - r);
    p.V1 = f.V.leftCols(r);
    p.V2 = f.V.rightCols(k - r);
    return p;
}

/// Truncated SVD reconstruction, the best rank-k approximation.
template <typename Scalar>
Matrix<Scalar> best_rank_approx(const SvdFactors<Scalar>& f, Index k) {
    k = std::min<Index>(k, f.sigma.size());
    return f.U.leftCols(k) * f.sigma.head(k).asDiagonal() * f.V.leftCols(k).transpose();
}

template <typename Derived>
auto singular_values(const Eigen::MatrixBase<Derived>& M) -> Vector<typename Derived::Scalar> {
    using Scalar = typename Derived::Scalar;
    require_dense(M);
    Matrix<Scalar> dense = M;
    Eigen::BDCSVD<Matrix<Scalar>> solver(dense);
    if (solver.info() != Eigen::Success)
        throw ConvergenceError("SVD did not converge", std::numeric_limits<double>::quiet_NaN());
    return solver.singularValues();
}

template <typename Derived>
auto spectral_norm(const Eigen::MatrixBase<Derived>& M) -> typename Derived::Scalar {
    return singular_values(M)(0);
}

template <typename Derived>
auto frobenius_norm(const Eigen::MatrixBase<Derived>& M) -> typename Derived::Scalar {
    return M.norm();
}

/// max|G - G^T| relative to ||G||_F.
template <typename Derived>
auto asymmetry(const Eigen::MatrixBase<Derived>& G) -> typename Derived::Scalar {
    using Scalar = typename Derived::Scalar;
    const Scalar scale = G.norm();
    if (scale == Scalar(0)) return Scalar(0);
    return (G - G.transpose()).cwiseAbs().maxCoeff() / scale;
}

template <typename Derived>
auto symmetric_eigen(const Eigen::MatrixBase<Derived>& G) -> SymmetricEigen<typename Derived::Scalar> {
    using Scalar = typename Derived::Scalar;
    require_dense(G, "symmetric input");
    if (G.rows() != G.cols()) throw ArgumentError("symmetric input must be square");
    if (asymmetry(G) > Scalar(1e-10)) throw ArgumentError("input is not symmetric within 1e-10");
    const Matrix<Scalar> sym = (G + G.transpose()) / Scalar(2);
    Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> solver(sym);
    if (solver.info() != Eigen::Success)
        throw ConvergenceError("symmetric eigensolver did not converge",
                               std::numeric_limits<double>::quiet_NaN());
    SymmetricEigen<Scalar> out;
    out.values = solver.eigenvalues().reverse();
    out.vectors = solver.eigenvectors().rowwise().reverse();
    for (Index k = 0; k < out.vectors.cols(); ++k)
        detail::apply_sign_convention(out.vectors.col(k));
    return out;
}

/// Orthonormal eigenvectors of the r largest eigenvalues of a symmetric G.
template <typename Derived>
auto top_r_eigvecs(const Eigen::MatrixBase<Derived>& G, Index r) -> Matrix<typename Derived::Scalar> {
    if (r < 1 || r > G.rows())
        throw ArgumentError("eigenvector count " + std::to_string(r) + " outside [1, " +
                            std::to_string(G.rows()) + "]");
    return symmetric_eigen(G).vectors.leftCols(r);
}

/// Moore-Penrose pseudo-inverse; singular values at or below tol * sigma_max
/// are treated as zero.
template <typename Derived>
auto pseudo_inverse(const Eigen::MatrixBase<Derived>& M, double tol = 1e-12)
    -> Matrix<typename Derived::Scalar> {
    using Scalar = typename Derived::Scalar;
    const auto f = svd(M);
    Matrix<Scalar> out = Matrix<Scalar>::Zero(M.cols(), M.rows());
    if (f.sigma.size() == 0 || f.sigma(0) == Scalar(0)) return out;
    const Scalar cut = Scalar(tol) * f.sigma(0);
    Vector<Scalar> inv = Vector<Scalar>::Zero(f.sigma.size());
    for (Index k = 0; k < f.sigma.size(); ++k)
        if (f.sigma(k) > cut) inv(k) = Scalar(1) / f.sigma(k);
    out = f.V * inv.asDiagonal() * f.U.transpose();
    return out;
}

/// ||Q^T Q - I||_F.
template <typename Derived>
auto orthonormality_error(const Eigen::MatrixBase<Derived>& Q) -> typename Derived::Scalar {
    using Scalar = typename Derived::Scalar;
    return (Q.transpose() * Q - Matrix<Scalar>::Identity(Q.cols(), Q.cols())).norm();
}

template <typename Derived>
void require_orthonormal(const Eigen::MatrixBase<Derived>& Q, const char* what = "basis") {
    require_dense(Q, what);
    if (Q.cols() > Q.rows() || orthonormality_error(Q) > 1e-8)
        throw ArgumentError(std::string(what) + " does not have orthonormal columns within 1e-8");
}

/// Orthogonal projector Q Q^T onto the span of orthonormal columns.
template <typename Derived>
auto projector(const Eigen::MatrixBase<Derived>& Q) -> Matrix<typename Derived::Scalar> {
    require_orthonormal(Q);
    return Q * Q.transpose();
}

/// Orthonormal basis of the column space of Y. Directions with singular value
/// at or below max(n, d) * eps * sigma_max are dropped.
template <typename Derived>
auto range_basis(const Eigen::MatrixBase<Derived>& Y) -> Matrix<typename Derived::Scalar> {
    using Scalar = typename Derived::Scalar;
    const auto f = svd(Y);
    if (f.sigma(0) == Scalar(0)) return Matrix<Scalar>(Y.rows(), 0);
    const Scalar cut = Scalar(std::max(Y.rows(), Y.cols())) *
                       std::numeric_limits<Scalar>::epsilon() * f.sigma(0);
    Index k = 0;
    while (k < f.sigma.size() && f.sigma(k) > cut) ++k;
    return f.U.leftCols(k);
}

/// Inverse square root of a symmetric positive definite matrix.
template <typename Derived>
auto inverse_sqrt_spd(const Eigen::MatrixBase<Derived>& H) -> Matrix<typename Derived::Scalar> {
    using Scalar = typename Derived::Scalar;
    const auto eig = symmetric_eigen(H);
    if (eig.values(eig.values.size() - 1) <= Scalar(0))
        throw ArgumentError("matrix is not positive definite");
    return eig.vectors * eig.values.cwiseSqrt().cwiseInverse().asDiagonal() *
           eig.vectors.transpose();
}

}  // namespace curlow
