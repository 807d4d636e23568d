#pragma once

#include <limits>

#include "curlow/linalg.hpp"
#include "curlow/sampling.hpp"

namespace curlow {

/// Classic CUR with uniformly sampled columns and rows. The linking matrix
/// U_core = C^+ M R^+ is formed from the full matrix.
template <typename Scalar>
struct CurFactors {
    Matrix<Scalar> C;       ///< n x c
    Matrix<Scalar> U_core;  ///< c x r_rows
    Matrix<Scalar> R;       ///< r_rows x m
    IndexSet col_idx;
    IndexSet row_idx;

    Matrix<Scalar> reconstruct() const { return C * U_core * R; }
};

template <typename Derived>
auto cur_decompose(const Eigen::MatrixBase<Derived>& M, Index c, Index r_rows, const RngStream& stream)
    -> CurFactors<typename Derived::Scalar> {
    using Scalar = typename Derived::Scalar;
    require_dense(M);
    CurFactors<Scalar> f;
    auto cols = sample_columns(M, c, stream.substream(1));
    auto rows = sample_rows(M, r_rows, stream.substream(2));
    f.C = std::move(cols.A);
    f.R = rows.B.transpose();
    f.col_idx = std::move(cols.index);
    f.row_idx = std::move(rows.index);
    f.U_core = pseudo_inverse(f.C) * M * pseudo_inverse(f.R);
    return f;
}

template <typename Scalar>
struct CurErrorReport {
    Scalar numerator{};    ///< ||M - CUR||_F
    Scalar denominator{};  ///< ||M - M_k||_F
    /// CUR reproduces M: numerator <= 1e-10 ||M||_F. No ratio is reported.
    bool exact = false;
    /// ||M - CUR||_F / ||M - M_k||_F; +inf when M has rank <= k but CUR is inexact.
    Scalar ratio = std::numeric_limits<Scalar>::quiet_NaN();
};

template <typename Scalar>
CurErrorReport<Scalar> cur_error_ratio(const Matrix<Scalar>& M, const CurFactors<Scalar>& f, Index k) {
    if (k < 1 || k > std::min(M.rows(), M.cols()))
        throw ArgumentError("comparison rank outside [1, min(n, m)]");
    CurErrorReport<Scalar> rep;
    const Scalar scale = M.norm();
    rep.numerator = (M - f.reconstruct()).norm();
    rep.denominator = (M - best_rank_approx(svd(M), k)).norm();
    if (rep.numerator <= Scalar(1e-10) * scale) {
        rep.exact = true;
        return rep;
    }
    if (rep.denominator <= Scalar(1e-12) * scale) {
        rep.ratio = std::numeric_limits<Scalar>::infinity();
        return rep;
    }
    rep.ratio = rep.numerator / rep.denominator;
    return rep;
}

}  // namespace curlow
