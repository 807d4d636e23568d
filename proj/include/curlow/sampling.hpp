#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "curlow/rng.hpp"
#include "curlow/types.hpp"

namespace curlow {

enum class Axis { rows, cols };

/// Distinct indices into one axis of a matrix. `indices` is sorted; the
/// order in which they were drawn is kept in `draw_order` and fixes the
/// column order of the sampled A / B matrices.
struct IndexSet {
    Axis kind = Axis::cols;
    Index bound = 0;
    std::vector<Index> indices;
    std::vector<Index> draw_order;

    Index size() const { return static_cast<Index>(indices.size()); }
};

/// An observed entry (i, j) with value M(i, j).
template <typename Scalar>
struct Observation {
    Index i = 0;
    Index j = 0;
    Scalar value{};
};

/// The observed index set Omega with its values, sorted by (i, j).
template <typename Scalar>
struct OmegaSet {
    Index rows = 0;
    Index cols = 0;
    std::vector<Observation<Scalar>> entries;

    Index size() const { return static_cast<Index>(entries.size()); }
    bool empty() const { return entries.empty(); }

    /// Validates bounds and distinctness and sorts by (i, j).
    static OmegaSet from_entries(Index rows, Index cols, std::vector<Observation<Scalar>> entries) {
        if (rows < 1 || cols < 1) throw ArgumentError("observation grid must be non-empty");
        std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
            return a.i != b.i ? a.i < b.i : a.j < b.j;
        });
        for (std::size_t k = 0; k < entries.size(); ++k) {
            const auto& e = entries[k];
            if (e.i < 0 || e.i >= rows || e.j < 0 || e.j >= cols)
                throw ArgumentError("observation (" + std::to_string(e.i) + ", " +
                                    std::to_string(e.j) + ") outside the grid");
            if (k > 0 && entries[k - 1].i == e.i && entries[k - 1].j == e.j)
                throw ArgumentError("duplicate observation (" + std::to_string(e.i) + ", " +
                                    std::to_string(e.j) + ")");
        }
        return OmegaSet{rows, cols, std::move(entries)};
    }
};

template <typename Scalar>
struct ColumnSample {
    IndexSet index;
    Matrix<Scalar> A;  ///< n x d, sampled columns in draw order
};

template <typename Scalar>
struct RowSample {
    IndexSet index;
    Matrix<Scalar> B;  ///< m x d, transposed sampled rows in draw order
};

/// First k positions of a uniformly random permutation of [0, population),
/// i.e. k draws without replacement. Partial Fisher-Yates; a sparse swap
/// table keeps memory O(k) when k is small relative to the population.
inline std::vector<std::uint64_t> draw_without_replacement(std::uint64_t population, std::uint64_t k,
                                                           const RngStream& stream) {
    if (k > population) throw ArgumentError("cannot draw more items than the population holds");
    CounterRng rng(stream);
    std::vector<std::uint64_t> out(k);
    if (k * 4 >= population) {
        std::vector<std::uint64_t> perm(population);
        std::iota(perm.begin(), perm.end(), std::uint64_t{0});
        for (std::uint64_t i = 0; i < k; ++i) {
            const std::uint64_t j = i + rng.uniform_below(population - i);
            std::swap(perm[i], perm[j]);
            out[i] = perm[i];
        }
        return out;
    }
    std::unordered_map<std::uint64_t, std::uint64_t> swapped;
    swapped.reserve(2 * k);
    auto at = [&](std::uint64_t p) {
        auto it = swapped.find(p);
        return it == swapped.end() ? p : it->second;
    };
    for (std::uint64_t i = 0; i < k; ++i) {
        const std::uint64_t j = i + rng.uniform_below(population - i);
        const std::uint64_t vi = at(i), vj = at(j);
        swapped[i] = vj;
        swapped[j] = vi;
        out[i] = vj;
    }
    return out;
}

inline IndexSet draw_index_set(Axis kind, Index bound, Index d, const RngStream& stream) {
    if (d < 1 || d > bound)
        throw ArgumentError("sample count " + std::to_string(d) + " outside [1, " +
                            std::to_string(bound) + "]");
    IndexSet set;
    set.kind = kind;
    set.bound = bound;
    for (auto v : draw_without_replacement(std::uint64_t(bound), std::uint64_t(d), stream))
        set.draw_order.push_back(static_cast<Index>(v));
    set.indices = set.draw_order;
    std::sort(set.indices.begin(), set.indices.end());
    return set;
}

/// Columns of M in the order given.
template <typename Derived>
auto gather_columns(const Eigen::MatrixBase<Derived>& M, const std::vector<Index>& order)
    -> Matrix<typename Derived::Scalar> {
    Matrix<typename Derived::Scalar> out(M.rows(), Index(order.size()));
    for (std::size_t k = 0; k < order.size(); ++k) out.col(Index(k)) = M.col(order[k]);
    return out;
}

template <typename Derived>
auto sample_columns(const Eigen::MatrixBase<Derived>& M, Index d, const RngStream& stream)
    -> ColumnSample<typename Derived::Scalar> {
    require_dense(M);
    ColumnSample<typename Derived::Scalar> s;
    s.index = draw_index_set(Axis::cols, M.cols(), d, stream);
    s.A = gather_columns(M, s.index.draw_order);
    return s;
}

template <typename Derived>
auto sample_rows(const Eigen::MatrixBase<Derived>& M, Index d, const RngStream& stream)
    -> RowSample<typename Derived::Scalar> {
    require_dense(M);
    RowSample<typename Derived::Scalar> s;
    s.index = draw_index_set(Axis::rows, M.rows(), d, stream);
    s.B = gather_columns(M.transpose(), s.index.draw_order);
    return s;
}

/// s distinct entries drawn uniformly without replacement from the n x m grid.
template <typename Derived>
auto sample_entries(const Eigen::MatrixBase<Derived>& M, Index s, const RngStream& stream)
    -> OmegaSet<typename Derived::Scalar> {
    using Scalar = typename Derived::Scalar;
    require_dense(M);
    const auto cells = std::uint64_t(M.rows()) * std::uint64_t(M.cols());
    if (s < 1 || std::uint64_t(s) > cells)
        throw ArgumentError("entry count " + std::to_string(s) + " outside [1, " +
                            std::to_string(cells) + "]");
    std::vector<Observation<Scalar>> entries;
    entries.reserve(std::size_t(s));
    for (auto flat : draw_without_replacement(cells, std::uint64_t(s), stream)) {
        const Index i = Index(flat / std::uint64_t(M.cols()));
        const Index j = Index(flat % std::uint64_t(M.cols()));
        entries.push_back({i, j, M(i, j)});
    }
    return OmegaSet<Scalar>::from_entries(M.rows(), M.cols(), std::move(entries));
}

/// R_Omega(M) in sparse form: omega with its values refreshed from M.
template <typename Derived>
auto restrict_to(const Eigen::MatrixBase<Derived>& M, OmegaSet<typename Derived::Scalar> omega)
    -> OmegaSet<typename Derived::Scalar> {
    if (omega.rows != M.rows() || omega.cols != M.cols())
        throw ArgumentError("observation grid does not match the matrix shape");
    for (auto& e : omega.entries) e.value = M(e.i, e.j);
    return omega;
}

/// Dense n x m matrix with observed values in place and zeros elsewhere.
template <typename Scalar>
Matrix<Scalar> densify(const OmegaSet<Scalar>& omega) {
    Matrix<Scalar> out = Matrix<Scalar>::Zero(omega.rows, omega.cols);
    for (const auto& e : omega.entries) out(e.i, e.j) = e.value;
    return out;
}

/// Sum of squared observed values, ||R_Omega(M)||_F^2.
template <typename Scalar>
Scalar observed_energy(const OmegaSet<Scalar>& omega) {
    Scalar acc(0);
    for (const auto& e : omega.entries) acc += e.value * e.value;
    return acc;
}

}  // namespace curlow
