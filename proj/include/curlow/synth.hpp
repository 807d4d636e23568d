#pragma once

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "curlow/coherence.hpp"
#include "curlow/rng.hpp"
#include "curlow/sampling.hpp"

namespace curlow {

enum class SpectrumKind { exact_low_rank, geometric, power_law };

/// How the singular-vector factors are built.
///  flat    - orthonormalized random sign matrix; mu concentrates near O(1)
///  uniform - permuted, sign-flipped real Fourier basis; leading r columns
///            have identical row norms, so mu(r) = 1 exactly
///  spiky   - flat, with the first left column tilted onto a canonical axis
enum class CoherenceKind { flat, uniform, spiky };

struct SynthSpec {
    Index n = 0;
    Index m = 0;
    SpectrumKind kind = SpectrumKind::exact_low_rank;
    Index r = 1;               ///< planted rank (exact kind); flat-block size (uniform)
    double decay = 0.5;        ///< ratio (geometric) or exponent (power law)
    CoherenceKind coherence = CoherenceKind::flat;
    Index spike_index = 0;
    double spike_weight = 0.0;
    double noise = 0.0;        ///< additive Gaussian noise, relative Frobenius size
    RngStream seed;

    void validate() const {
        if (n < 1 || m < 1) throw ArgumentError("synth dimensions must be positive");
        if (kind == SpectrumKind::exact_low_rank && (r < 1 || r > std::min(n, m)))
            throw ArgumentError("planted rank outside [1, min(n, m)]");
        if (kind == SpectrumKind::geometric && !(decay > 0.0 && decay < 1.0))
            throw ArgumentError("geometric decay must lie in (0, 1)");
        if (kind == SpectrumKind::power_law && !(decay > 0.0))
            throw ArgumentError("power-law exponent must be positive");
        if (coherence == CoherenceKind::spiky) {
            if (!(spike_weight >= 0.0 && spike_weight <= 1.0))
                throw ArgumentError("spike weight must lie in [0, 1]");
            if (spike_index < 0 || spike_index >= n) throw ArgumentError("spike index outside [0, n)");
        }
        if (coherence == CoherenceKind::uniform && (r < 1 || r > std::min(n, m)))
            throw ArgumentError("uniform coherence needs 1 <= r <= min(n, m)");
        if (!(noise >= 0.0) || !std::isfinite(noise)) throw ArgumentError("noise level must be nonnegative");
    }

    Index factor_columns() const { return kind == SpectrumKind::exact_low_rank ? r : std::min(n, m); }
};

template <typename Scalar>
struct SynthInstance {
    Matrix<Scalar> M;
    SvdFactors<Scalar> ground_truth;  ///< SVD of the noise-free part
};

namespace detail {

template <typename Scalar>
Matrix<Scalar> orthonormalize(const Matrix<Scalar>& X) {
    Eigen::HouseholderQR<Matrix<Scalar>> qr(X);
    Matrix<Scalar> Q = qr.householderQ() * Matrix<Scalar>::Identity(X.rows(), X.cols());
    // Fix the arbitrary Householder signs so Q spans columns with the same orientation as X.
    const Matrix<Scalar> Rdiag = qr.matrixQR().diagonal();
    for (Index k = 0; k < Q.cols(); ++k)
        if (Rdiag(k) < Scalar(0)) Q.col(k) = -Q.col(k);
    return Q;
}

template <typename Scalar>
Matrix<Scalar> sign_factor(Index rows, Index cols, const RngStream& stream) {
    CounterRng rng(stream);
    Matrix<Scalar> X(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) X(i, j) = Scalar(rng.sign());
    return orthonormalize(X);
}

/// Real Fourier basis with equal row norms on the first `flat` columns, rows
/// permuted and sign-flipped at random.
template <typename Scalar>
Matrix<Scalar> uniform_factor(Index rows, Index cols, Index flat, const RngStream& stream) {
    const Index N = rows;
    const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
    std::vector<Vector<Scalar>> pairs_cos, pairs_sin;
    for (Index f = 1; 2 * f < N; ++f) {
        Vector<Scalar> c(N), s(N);
        for (Index i = 0; i < N; ++i) {
            c(i) = std::sqrt(Scalar(2) / Scalar(N)) * std::cos(two_pi * Scalar(f * i % N) / Scalar(N));
            s(i) = std::sqrt(Scalar(2) / Scalar(N)) * std::sin(two_pi * Scalar(f * i % N) / Scalar(N));
        }
        pairs_cos.push_back(std::move(c));
        pairs_sin.push_back(std::move(s));
    }
    const Vector<Scalar> constant = Vector<Scalar>::Constant(N, Scalar(1) / std::sqrt(Scalar(N)));
    Vector<Scalar> nyquist;
    if (N % 2 == 0) {
        nyquist.resize(N);
        for (Index i = 0; i < N; ++i) nyquist(i) = (i % 2 ? Scalar(-1) : Scalar(1)) / std::sqrt(Scalar(N));
    }

    // Random frequency order.
    const auto order = draw_without_replacement(pairs_cos.size(), pairs_cos.size(), stream.substream(1));
    std::vector<Vector<Scalar>> columns;
    if (flat % 2 == 1) columns.push_back(constant);
    for (auto f : order) {
        columns.push_back(pairs_cos[f]);
        columns.push_back(pairs_sin[f]);
    }
    if (flat % 2 == 0) columns.push_back(constant);
    if (N % 2 == 0) columns.push_back(nyquist);
    if (Index(columns.size()) < cols) throw ArgumentError("uniform factor needs at least as many rows as columns");

    Matrix<Scalar> Q(N, cols);
    for (Index k = 0; k < cols; ++k) Q.col(k) = columns[std::size_t(k)];

    const auto perm = draw_without_replacement(std::uint64_t(N), std::uint64_t(N), stream.substream(2));
    CounterRng signs(stream.substream(3));
    Matrix<Scalar> out(N, cols);
    for (Index i = 0; i < N; ++i) out.row(i) = Scalar(signs.sign()) * Q.row(Index(perm[std::size_t(i)]));
    return out;
}

template <typename Scalar>
Matrix<Scalar> spiky_factor(Index rows, Index cols, Index index, Scalar weight, const RngStream& stream) {
    Matrix<Scalar> Q = sign_factor<Scalar>(rows, cols, stream);
    Vector<Scalar> base = Q.col(0);
    base(index) = Scalar(0);
    const Scalar norm = base.norm();
    if (norm > Scalar(0)) base /= norm;
    Vector<Scalar> tilted = std::sqrt(std::max(Scalar(0), Scalar(1) - weight * weight)) * base;
    tilted(index) += weight;
    Q.col(0) = tilted;
    return orthonormalize(Q);
}

template <typename Scalar>
Matrix<Scalar> make_factor(const SynthSpec& spec, Index rows, Index cols, bool left, const RngStream& stream) {
    switch (spec.coherence) {
        case CoherenceKind::uniform: return uniform_factor<Scalar>(rows, cols, spec.r, stream);
        case CoherenceKind::spiky:
            if (left) return spiky_factor<Scalar>(rows, cols, spec.spike_index, Scalar(spec.spike_weight), stream);
            return sign_factor<Scalar>(rows, cols, stream);
        case CoherenceKind::flat: break;
    }
    return sign_factor<Scalar>(rows, cols, stream);
}

}  // namespace detail

template <typename Scalar = double>
SynthInstance<Scalar> generate(const SynthSpec& spec) {
    spec.validate();
    const Index k = spec.factor_columns();
    SynthInstance<Scalar> out;
    auto& gt = out.ground_truth;
    gt.U = detail::make_factor<Scalar>(spec, spec.n, k, true, spec.seed.substream(11));
    gt.V = detail::make_factor<Scalar>(spec, spec.m, k, false, spec.seed.substream(12));
    gt.sigma.resize(k);
    switch (spec.kind) {
        case SpectrumKind::exact_low_rank: {
            CounterRng rng(spec.seed.substream(13));
            for (Index i = 0; i < k; ++i) gt.sigma(i) = std::pow(Scalar(10), Scalar(rng.uniform01()));
            std::sort(gt.sigma.data(), gt.sigma.data() + k, std::greater<Scalar>());
            break;
        }
        case SpectrumKind::geometric:
            for (Index i = 0; i < k; ++i) gt.sigma(i) = std::pow(Scalar(spec.decay), Scalar(i));
            break;
        case SpectrumKind::power_law:
            for (Index i = 0; i < k; ++i) gt.sigma(i) = std::pow(Scalar(i + 1), -Scalar(spec.decay));
            break;
    }
    out.M = gt.reconstruct();
    if (spec.noise > 0.0) {
        CounterRng rng(spec.seed.substream(14));
        Matrix<Scalar> N(spec.n, spec.m);
        for (Index j = 0; j < spec.m; ++j)
            for (Index i = 0; i < spec.n; ++i) N(i, j) = Scalar(rng.normal());
        out.M += (Scalar(spec.noise) * out.M.norm() / N.norm()) * N;
    }
    return out;
}

/// Instance statistics used to gate the bound premises.
template <typename Scalar>
struct MeasuredProperties {
    Index r = 0;
    Scalar lambda{};
    Scalar mu_r{};
    Scalar mu_lambda{};
    Scalar numerical_rank{};
    Scalar sigma_r{};
    Scalar sigma_next{};
    Scalar gap_ratio{};        ///< sigma_r / sigma_{r+1}; +inf when sigma_{r+1} = 0
    bool gap_premise = false;  ///< sigma_r >= sqrt(2) sigma_{r+1}
};

template <typename Scalar>
MeasuredProperties<Scalar> measured_properties(const SvdFactors<Scalar>& f, Index r, Scalar lambda) {
    MeasuredProperties<Scalar> p;
    p.r = r;
    p.lambda = lambda;
    p.mu_r = mu_r(f, r).mu;
    const auto nr = numerical_rank_report(f, lambda);
    p.numerical_rank = nr.value;
    p.mu_lambda = nr.mu_lambda;
    p.sigma_r = f.sigma(r - 1);
    p.sigma_next = r < f.sigma.size() ? f.sigma(r) : Scalar(0);
    p.gap_ratio = p.sigma_next > Scalar(0) ? p.sigma_r / p.sigma_next
                                           : std::numeric_limits<Scalar>::infinity();
    p.gap_premise = p.sigma_r >= std::sqrt(Scalar(2)) * p.sigma_next;
    return p;
}

/// lambda = sigma_r^2 / (m n), the regularizer used by the full-rank results.
template <typename Scalar>
Scalar default_lambda(const SvdFactors<Scalar>& f, Index r) {
    return f.sigma(r - 1) * f.sigma(r - 1) / (Scalar(f.U.rows()) * Scalar(f.V.rows()));
}

template <typename Derived>
auto measured_properties(const Eigen::MatrixBase<Derived>& M, Index r, typename Derived::Scalar lambda)
    -> MeasuredProperties<typename Derived::Scalar> {
    return measured_properties(svd(M), r, lambda);
}

}  // namespace curlow
