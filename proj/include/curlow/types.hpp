#pragma once

#include <Eigen/Dense>

#include <cmath>

#include "curlow/errors.hpp"

namespace curlow {

using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixXd = Matrix<double>;
using VectorXd = Vector<double>;

/// Throws unless `m` is a non-empty matrix with finite entries.
template <typename Derived>
void require_dense(const Eigen::MatrixBase<Derived>& m, const char* what = "matrix") {
    if (m.rows() < 1 || m.cols() < 1)
        throw ArgumentError(std::string(what) + " must have at least one row and one column");
    if (!m.allFinite())
        throw ArgumentError(std::string(what) + " contains a non-finite entry");
}

}  // namespace curlow
