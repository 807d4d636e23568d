#pragma once

#include <algorithm>
#include <tuple>
#include <vector>

#include "curlow/linalg.hpp"
#include "curlow/sampling.hpp"

namespace curlow {

template <typename Scalar>
struct RecoveryInputs {
    Matrix<Scalar> A;  ///< n x d sampled columns
    Matrix<Scalar> B;  ///< m x d transposed sampled rows
    OmegaSet<Scalar> omega;
    Index r = 0;

    void validate() const {
        require_dense(A, "A");
        require_dense(B, "B");
        if (r < 1 || r > A.cols() || r > B.cols())
            throw ArgumentError("target rank must satisfy 1 <= r <= d");
        if (omega.rows != A.rows() || omega.cols != B.rows())
            throw ArgumentError("observation grid does not match (rows of A, rows of B)");
    }
};

/// Leading eigenvectors of A A^T and B B^T.
template <typename Scalar>
struct Bases {
    Matrix<Scalar> U_hat;  ///< n x r
    Matrix<Scalar> V_hat;  ///< m x r
    /// lambda_r and lambda_{r+1} of A A^T (resp. B B^T) coincide within
    /// 1e-12 * lambda_1: the subspace is not uniquely determined.
    bool degenerate_gap_U = false;
    bool degenerate_gap_V = false;

    Index rank() const { return U_hat.cols(); }
    bool degenerate_gap() const { return degenerate_gap_U || degenerate_gap_V; }
};

namespace detail {

template <typename Scalar>
std::pair<Matrix<Scalar>, bool> leading_eigvecs(const Matrix<Scalar>& sample, Index r) {
    const Matrix<Scalar> gram = sample * sample.transpose();
    const auto eig = symmetric_eigen(gram);
    bool degenerate = false;
    if (r < eig.values.size()) {
        const Scalar top = std::max(std::abs(eig.values(0)), Scalar(1e-300));
        degenerate = std::abs(eig.values(r - 1) - eig.values(r)) <= Scalar(1e-12) * top;
    }
    return {eig.vectors.leftCols(r), degenerate};
}

}  // namespace detail

template <typename Scalar>
Bases<Scalar> build_bases(const Matrix<Scalar>& A, const Matrix<Scalar>& B, Index r) {
    require_dense(A, "A");
    require_dense(B, "B");
    if (r < 1 || r > A.cols() || r > B.cols())
        throw ArgumentError("target rank must satisfy 1 <= r <= d");
    if (r > A.rows() || r > B.rows()) throw ArgumentError("target rank exceeds the matrix dimension");
    Bases<Scalar> b;
    std::tie(b.U_hat, b.degenerate_gap_U) = detail::leading_eigvecs(A, r);
    std::tie(b.V_hat, b.degenerate_gap_V) = detail::leading_eigvecs(B, r);
    return b;
}

/// The least-squares system behind the core regression. Column (i, j) of the
/// design matrix K has, in the row of observation (a, b), the entry
/// U_hat(a, i) * V_hat(b, j); z = vec(Z) in row-major order, column index
/// i * r + j. K is never stored: rows are generated from the bases while the
/// normal matrix K^T K and K^T y are accumulated in fixed-size blocks.
template <typename Scalar>
class DesignSystem {
public:
    static constexpr Index block_rows = 256;

    DesignSystem(Bases<Scalar> bases, OmegaSet<Scalar> omega)
        : bases_(std::move(bases)), omega_(std::move(omega)) {
        if (omega_.empty()) throw ArgumentError("the observation set is empty");
        if (omega_.rows != bases_.U_hat.rows() || omega_.cols != bases_.V_hat.rows())
            throw ArgumentError("observation grid does not match the bases");
        if (bases_.U_hat.cols() != bases_.V_hat.cols())
            throw ArgumentError("bases must have the same rank");
        accumulate();
    }

    Index rank() const { return bases_.rank(); }
    Index unknowns() const { return rank() * rank(); }
    Index observations() const { return omega_.size(); }
    Index grid_rows() const { return omega_.rows; }
    Index grid_cols() const { return omega_.cols; }

    const Bases<Scalar>& bases() const { return bases_; }
    const OmegaSet<Scalar>& omega() const { return omega_; }
    const Matrix<Scalar>& normal_matrix() const { return KtK_; }
    const Vector<Scalar>& rhs() const { return Kty_; }
    static Index column_of(Index i, Index j, Index r) { return i * r + j; }

    /// Row of K for observation k.
    Vector<Scalar> row(Index k) const {
        const auto& e = omega_.entries[std::size_t(k)];
        const Index r = rank();
        Vector<Scalar> out(r * r);
        for (Index i = 0; i < r; ++i)
            out.segment(i * r, r) = bases_.U_hat(e.i, i) * bases_.V_hat.row(e.j).transpose();
        return out;
    }

    /// Dense |Omega| x r^2 design matrix; for inspection and small systems.
    Matrix<Scalar> design_matrix() const {
        Matrix<Scalar> K(observations(), unknowns());
        fill_rows(0, observations(), K);
        return K;
    }

    Vector<Scalar> observations_vector() const {
        Vector<Scalar> y(observations());
        for (Index k = 0; k < observations(); ++k) y(k) = omega_.entries[std::size_t(k)].value;
        return y;
    }

    /// K z - y, streamed.
    Vector<Scalar> residual_vector(const Vector<Scalar>& z) const {
        Vector<Scalar> res(observations());
        Matrix<Scalar> block;
        for (Index start = 0; start < observations(); start += block_rows) {
            const Index len = std::min(block_rows, observations() - start);
            block.resize(len, unknowns());
            fill_rows(start, len, block);
            res.segment(start, len) = block * z;
            for (Index k = 0; k < len; ++k) res(start + k) -= omega_.entries[std::size_t(start + k)].value;
        }
        return res;
    }

    /// K^T v, streamed.
    Vector<Scalar> apply_transpose(const Vector<Scalar>& v) const {
        Vector<Scalar> out = Vector<Scalar>::Zero(unknowns());
        Matrix<Scalar> block;
        for (Index start = 0; start < observations(); start += block_rows) {
            const Index len = std::min(block_rows, observations() - start);
            block.resize(len, unknowns());
            fill_rows(start, len, block);
            out.noalias() += block.transpose() * v.segment(start, len);
        }
        return out;
    }

private:
    void fill_rows(Index start, Index len, Matrix<Scalar>& out) const {
        const Index r = rank();
        for (Index k = 0; k < len; ++k) {
            const auto& e = omega_.entries[std::size_t(start + k)];
            for (Index i = 0; i < r; ++i)
                out.row(k).segment(i * r, r) = bases_.U_hat(e.i, i) * bases_.V_hat.row(e.j);
        }
    }

    void accumulate() {
        const Index p = unknowns();
        KtK_ = Matrix<Scalar>::Zero(p, p);
        Kty_ = Vector<Scalar>::Zero(p);
        Matrix<Scalar> block;
        Vector<Scalar> y;
        for (Index start = 0; start < observations(); start += block_rows) {
            const Index len = std::min(block_rows, observations() - start);
            block.resize(len, p);
            y.resize(len);
            fill_rows(start, len, block);
            for (Index k = 0; k < len; ++k) y(k) = omega_.entries[std::size_t(start + k)].value;
            KtK_.noalias() += block.transpose() * block;
            Kty_.noalias() += block.transpose() * y;
        }
        KtK_ = (KtK_ + KtK_.transpose()).eval() / Scalar(2);
    }

    Bases<Scalar> bases_;
    OmegaSet<Scalar> omega_;
    Matrix<Scalar> KtK_;
    Vector<Scalar> Kty_;
};

template <typename Scalar>
DesignSystem<Scalar> assemble_design(Bases<Scalar> bases, OmegaSet<Scalar> omega) {
    return DesignSystem<Scalar>(std::move(bases), std::move(omega));
}

/// lambda_min(K^T K), the curvature of the core objective.
template <typename Scalar>
Scalar strong_convexity_gamma(const DesignSystem<Scalar>& sys) {
    const auto eig = symmetric_eigen(sys.normal_matrix());
    return std::max(eig.values(eig.values.size() - 1), Scalar(0));
}

/// Ill-posedness cut for the unregularized solve: 1e-12 * |Omega| / (n m).
template <typename Scalar>
Scalar degeneracy_threshold(const DesignSystem<Scalar>& sys) {
    return Scalar(1e-12) * Scalar(sys.observations()) /
           (Scalar(sys.grid_rows()) * Scalar(sys.grid_cols()));
}

template <typename Scalar>
struct CoreSolution {
    Matrix<Scalar> Z_star;  ///< r x r
    Scalar lambda_min_KtK{};
    Scalar residual{};      ///< ||K z - y||^2 + ridge ||z||^2 at the minimizer
};

/// Minimizes ||K z - y||^2 + ridge ||z||^2 through a Cholesky factorization of
/// the normal matrix, followed by one step of iterative refinement against
/// the streamed residual.
template <typename Scalar>
CoreSolution<Scalar> solve_core(const DesignSystem<Scalar>& sys, Scalar ridge = Scalar(0)) {
    if (!(ridge >= Scalar(0))) throw ArgumentError("ridge must be nonnegative");
    CoreSolution<Scalar> out;
    out.lambda_min_KtK = strong_convexity_gamma(sys);
    if (ridge == Scalar(0) && out.lambda_min_KtK < degeneracy_threshold(sys))
        throw IllPosedError(double(out.lambda_min_KtK), double(degeneracy_threshold(sys)));

    const Index p = sys.unknowns();
    const Matrix<Scalar> normal = sys.normal_matrix() + ridge * Matrix<Scalar>::Identity(p, p);
    Eigen::LLT<Matrix<Scalar>> chol(normal);
    if (chol.info() != Eigen::Success)
        throw IllPosedError(double(out.lambda_min_KtK), double(degeneracy_threshold(sys)));
    Vector<Scalar> z = chol.solve(sys.rhs());
    {
        const Vector<Scalar> gradient = sys.apply_transpose(sys.residual_vector(z)) + ridge * z;
        z -= chol.solve(gradient);
    }
    const Vector<Scalar> res = sys.residual_vector(z);
    out.residual = res.squaredNorm() + ridge * z.squaredNorm();
    const Index r = sys.rank();
    out.Z_star.resize(r, r);
    for (Index i = 0; i < r; ++i)
        for (Index j = 0; j < r; ++j) out.Z_star(i, j) = z(DesignSystem<Scalar>::column_of(i, j, r));
    return out;
}

/// Objective value ||R_Omega(M) - R_Omega(U_hat Z V_hat^T)||_F^2 + ridge ||Z||_F^2.
template <typename Scalar>
Scalar core_objective(const DesignSystem<Scalar>& sys, const Matrix<Scalar>& Z, Scalar ridge = Scalar(0)) {
    const Index r = sys.rank();
    Vector<Scalar> z(r * r);
    for (Index i = 0; i < r; ++i)
        for (Index j = 0; j < r; ++j) z(DesignSystem<Scalar>::column_of(i, j, r)) = Z(i, j);
    return sys.residual_vector(z).squaredNorm() + ridge * z.squaredNorm();
}

template <typename Scalar>
struct RecoveryResult {
    Matrix<Scalar> Z_star;
    Bases<Scalar> bases;
    Scalar lambda_min_KtK{};
    Scalar residual{};
    Scalar regularizer_used{};
    Index observations = 0;

    /// M_hat = U_hat Z_star V_hat^T.
    Matrix<Scalar> dense() const { return bases.U_hat * Z_star * bases.V_hat.transpose(); }
};

template <typename Scalar>
RecoveryResult<Scalar> recover(const RecoveryInputs<Scalar>& inputs, Scalar ridge = Scalar(0)) {
    inputs.validate();
    auto bases = build_bases(inputs.A, inputs.B, inputs.r);
    const DesignSystem<Scalar> sys(bases, inputs.omega);
    auto core = solve_core(sys, ridge);
    return RecoveryResult<Scalar>{std::move(core.Z_star), std::move(bases), core.lambda_min_KtK,
                                  core.residual, ridge, sys.observations()};
}

}  // namespace curlow
