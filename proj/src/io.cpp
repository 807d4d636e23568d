#include "curlow/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

namespace curlow::io {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

double parse_double(std::string_view token, std::size_t line) {
    token = trim(token);
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size() || token.empty())
        throw ParseError("non-numeric token '" + std::string(token) + "'", line);
    if (!std::isfinite(v)) throw ParseError("non-finite value '" + std::string(token) + "'", line);
    return v;
}

Index parse_index(std::string_view token, std::size_t line) {
    token = trim(token);
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size() || token.empty() || v < 0)
        throw ParseError("expected a nonnegative integer, got '" + std::string(token) + "'", line);
    return Index(v);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        const std::size_t start = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
        if (i > start) out.push_back(s.substr(start, i - start));
    }
    return out;
}

std::vector<std::string_view> lines_of(const std::string& text) {
    std::vector<std::string_view> out = split(text, '\n');
    if (!out.empty() && out.back().empty()) out.pop_back();
    return out;
}

MatrixXd parse_matrix_market(const std::vector<std::string_view>& lines) {
    const auto header = split_ws(lines[0]);
    if (header.size() != 5 || header[1] != "matrix" || header[2] != "array" || header[3] != "real" ||
        header[4] != "general")
        throw ParseError("expected '%%MatrixMarket matrix array real general'", 1);
    std::size_t k = 1;
    while (k < lines.size() && (trim(lines[k]).empty() || trim(lines[k]).front() == '%')) ++k;
    if (k == lines.size()) throw ParseError("missing size line", 0);
    const auto dims = split_ws(lines[k]);
    if (dims.size() != 2) throw ParseError("size line must hold two integers", k + 1);
    const Index rows = parse_index(dims[0], k + 1), cols = parse_index(dims[1], k + 1);
    if (rows < 1 || cols < 1) throw ParseError("matrix dimensions must be positive", k + 1);
    MatrixXd M(rows, cols);
    Index filled = 0;
    for (++k; k < lines.size(); ++k) {
        const auto s = trim(lines[k]);
        if (s.empty() || s.front() == '%') continue;
        if (filled == rows * cols) throw ParseError("more values than the declared dimensions", k + 1);
        M(filled % rows, filled / rows) = parse_double(s, k + 1);
        ++filled;
    }
    if (filled != rows * cols)
        throw ParseError("expected " + std::to_string(rows * cols) + " values, found " + std::to_string(filled), 0);
    return M;
}

MatrixXd parse_csv(const std::vector<std::string_view>& lines) {
    Index declared_rows = -1, declared_cols = -1;
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < lines.size(); ++k) {
        const auto s = trim(lines[k]);
        if (s.empty()) continue;
        if (s.front() == '#') {
            for (auto tok : split_ws(s.substr(1))) {
                if (tok.starts_with("rows=")) declared_rows = parse_index(tok.substr(5), k + 1);
                else if (tok.starts_with("cols=")) declared_cols = parse_index(tok.substr(5), k + 1);
            }
            continue;
        }
        std::vector<double> row;
        for (auto tok : split(s, ',')) row.push_back(parse_double(tok, k + 1));
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError("ragged row: expected " + std::to_string(rows.front().size()) + " values", k + 1);
        if (declared_cols >= 0 && Index(row.size()) != declared_cols)
            throw ParseError("row length does not match cols=" + std::to_string(declared_cols), k + 1);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("matrix file holds no rows", 0);
    if (declared_rows >= 0 && Index(rows.size()) != declared_rows)
        throw ParseError("found " + std::to_string(rows.size()) + " rows, header declares " +
                             std::to_string(declared_rows), 0);
    MatrixXd M(Index(rows.size()), Index(rows.front().size()));
    for (Index i = 0; i < M.rows(); ++i)
        for (Index j = 0; j < M.cols(); ++j) M(i, j) = rows[std::size_t(i)][std::size_t(j)];
    return M;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string matrix_to_string(const MatrixXd& M, MatrixFormat format) {
    require_dense(M);
    std::string out;
    if (format == MatrixFormat::matrix_market) {
        out += "%%MatrixMarket matrix array real general\n";
        out += std::to_string(M.rows()) + " " + std::to_string(M.cols()) + "\n";
        for (Index j = 0; j < M.cols(); ++j)
            for (Index i = 0; i < M.rows(); ++i) out += format_double(M(i, j)) + "\n";
    } else {
        out += "# rows=" + std::to_string(M.rows()) + " cols=" + std::to_string(M.cols()) + "\n";
        for (Index i = 0; i < M.rows(); ++i) {
            for (Index j = 0; j < M.cols(); ++j) {
                if (j) out += ',';
                out += format_double(M(i, j));
            }
            out += '\n';
        }
    }
    return out;
}

MatrixXd matrix_from_string(const std::string& text) {
    const auto lines = lines_of(text);
    if (lines.empty()) throw ParseError("empty matrix file", 0);
    if (trim(lines[0]).starts_with("%%MatrixMarket")) return parse_matrix_market(lines);
    return parse_csv(lines);
}

void write_matrix(const MatrixXd& M, const std::filesystem::path& path, MatrixFormat format) {
    write_text(path, matrix_to_string(M, format));
}

MatrixXd read_matrix(const std::filesystem::path& path) { return matrix_from_string(read_text(path)); }

std::string omega_to_string(const OmegaSet<double>& omega) {
    std::string out = "i,j,value\n";
    for (const auto& e : omega.entries)
        out += std::to_string(e.i) + "," + std::to_string(e.j) + "," + format_double(e.value) + "\n";
    return out;
}

OmegaSet<double> omega_from_string(const std::string& text, Index rows, Index cols) {
    const auto lines = lines_of(text);
    if (lines.empty() || trim(lines[0]) != "i,j,value") throw ParseError("expected header 'i,j,value'", 1);
    std::vector<Observation<double>> entries;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto s = trim(lines[k]);
        if (s.empty()) continue;
        const auto fields = split(s, ',');
        if (fields.size() != 3) throw ParseError("expected three fields 'i,j,value'", k + 1);
        Observation<double> e{parse_index(fields[0], k + 1), parse_index(fields[1], k + 1),
                              parse_double(fields[2], k + 1)};
        if (e.i >= rows || e.j >= cols)
            throw ParseError("index outside the " + std::to_string(rows) + " x " + std::to_string(cols) + " grid",
                             k + 1);
        if (!entries.empty()) {
            const auto& prev = entries.back();
            if (prev.i == e.i && prev.j == e.j) throw ParseError("duplicate pair", k + 1);
            if (prev.i > e.i || (prev.i == e.i && prev.j > e.j))
                throw ParseError("pairs must be sorted by (i, j)", k + 1);
        }
        entries.push_back(e);
    }
    if (entries.empty()) throw ParseError("observation file holds no entries", 0);
    return OmegaSet<double>::from_entries(rows, cols, std::move(entries));
}

void write_omega(const OmegaSet<double>& omega, const std::filesystem::path& path) {
    write_text(path, omega_to_string(omega));
}

OmegaSet<double> read_omega(const std::filesystem::path& path, Index rows, Index cols) {
    return omega_from_string(read_text(path), rows, cols);
}

std::string index_set_to_string(const IndexSet& set) {
    std::string out;
    for (Index v : set.indices) out += std::to_string(v) + "\n";
    return out;
}

void write_index_set(const IndexSet& set, const std::filesystem::path& path) {
    write_text(path, index_set_to_string(set));
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << text;
    if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace curlow::io
