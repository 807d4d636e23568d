#pragma once

#include <filesystem>
#include <string>

#include "curlow/sampling.hpp"
#include "curlow/types.hpp"

namespace curlow::io {

enum class MatrixFormat {
    matrix_market,  ///< `%%MatrixMarket matrix array real general`, column-major values
    csv             ///< `# rows=N cols=M` header, one comma-separated row per line
};

/// Shortest decimal that is guaranteed to round-trip: 17 significant digits.
std::string format_double(double v);

void write_matrix(const MatrixXd& M, const std::filesystem::path& path,
                  MatrixFormat format = MatrixFormat::matrix_market);
/// Format is detected from the first line.
MatrixXd read_matrix(const std::filesystem::path& path);

std::string matrix_to_string(const MatrixXd& M, MatrixFormat format);
MatrixXd matrix_from_string(const std::string& text);

/// CSV with header `i,j,value`, zero-based indices, sorted by (i, j).
void write_omega(const OmegaSet<double>& omega, const std::filesystem::path& path);
/// The grid shape is not stored in the file; it is passed in.
OmegaSet<double> read_omega(const std::filesystem::path& path, Index rows, Index cols);
std::string omega_to_string(const OmegaSet<double>& omega);
OmegaSet<double> omega_from_string(const std::string& text, Index rows, Index cols);

/// One zero-based index per line, ascending.
void write_index_set(const IndexSet& set, const std::filesystem::path& path);
std::string index_set_to_string(const IndexSet& set);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace curlow::io
