#pragma once

#include <stdexcept>
#include <string>

namespace curlow {

/// Precondition violated by the caller (bad shape, out-of-range count, ...).
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An iterative factorization did not converge.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
          residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// The core regression has no unique minimizer: lambda_min(K^T K) is below
/// the degeneracy threshold and no ridge term was requested.
class IllPosedError : public std::runtime_error {
public:
    IllPosedError(double lambda_min, double threshold)
        : std::runtime_error("ill-posed core regression: lambda_min(K^T K) = " +
                             std::to_string(lambda_min) + " < " + std::to_string(threshold) +
                             "; raise the number of sampled entries or d, or set a ridge"),
          lambda_min_(lambda_min) {}
    double lambda_min() const noexcept { return lambda_min_; }

private:
    double lambda_min_;
};

/// Malformed input file. `line` is 1-based, 0 when not attributable to a line.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(line ? what + " (line " + std::to_string(line) + ")" : what),
          line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace curlow
