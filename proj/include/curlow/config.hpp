#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "curlow/json.hpp"
#include "curlow/synth.hpp"

namespace curlow {

/// Flat key-value configuration. One `key = value` per line, dotted keys,
/// values are decimal literals or double-quoted strings, `#` starts a comment.
class Config {
public:
    static Config parse(const std::string& text);
    static Config load(const std::filesystem::path& path);

    /// Sets from a `key=value` override; the value follows the file syntax.
    void set_override(const std::string& assignment);
    void set(const std::string& key, const std::string& value) { values_[key] = value; }

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    long long get_int(const std::string& key, long long fallback) const;

    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

/// A sample budget given explicitly or resolved per instance from the
/// sample-size formulas ("auto").
using Budget = std::optional<Index>;

struct ExperimentConfig {
    SynthSpec synth;
    std::string matrix_path;      ///< when set, M is read from this file instead of generated
    Index r = 1;
    Budget d;
    Budget omega;
    double t = 3.0;
    Index trials = 1;
    double ridge = 0.0;
    std::uint64_t seed = 0;
    std::vector<std::string> checks;
    double sandwich_lambda_scale = 1.0;  ///< lambda = scale * sigma_r^2 / (mn) for the Gram pairs
    double sandwich_delta = 0.5;
    std::vector<Index> d_grid;
    std::vector<Index> omega_grid;
    Index cur_c = 0;
    Index cur_r_rows = 0;
    Index cur_k = 1;

    static ExperimentConfig from(const Config& cfg);
    /// Resolved configuration, embedded in every report.
    Json to_json() const;
};

std::string spectrum_kind_name(SpectrumKind k);
std::string coherence_kind_name(CoherenceKind k);

}  // namespace curlow
