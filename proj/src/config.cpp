#include "curlow/config.hpp"

#include <charconv>
#include <set>

#include "curlow/io.hpp"

namespace curlow {

namespace {

const std::set<std::string> kKnownKeys = {
    "synth.kind",   "synth.n",          "synth.m",         "synth.r",      "synth.decay",
    "synth.coherence", "synth.spike_index", "synth.spike_weight", "synth.noise", "input.matrix",
    "r",            "d",                "omega",           "t",            "trials",
    "ridge",        "seed",             "checks",          "sandwich.lambda_scale", "sandwich.delta",
    "sweep.d_grid", "sweep.omega_grid", "cur.c",           "cur.r_rows",   "cur.k"};

std::string strip(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

/// Validates a raw value and returns it unquoted.
std::string normalize_value(const std::string& raw, std::size_t line) {
    const std::string v = strip(raw);
    if (v.empty()) throw ParseError("missing value", line);
    if (v.front() == '"') {
        if (v.size() < 2 || v.back() != '"') throw ParseError("unterminated string", line);
        return v.substr(1, v.size() - 2);
    }
    double parsed = 0.0;
    const char* first = v.data() + (v.front() == '+' ? 1 : 0);
    const auto [ptr, ec] = std::from_chars(first, v.data() + v.size(), parsed);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw ParseError("value '" + v + "' is neither a decimal literal nor a quoted string", line);
    return v;
}

void store(std::map<std::string, std::string>& values, const std::string& key, const std::string& raw,
           std::size_t line) {
    const std::string k = strip(key);
    if (!kKnownKeys.count(k)) throw ParseError("unknown configuration key '" + k + "'", line);
    values[k] = normalize_value(raw, line);
}

std::vector<Index> parse_list(const std::string& s, const std::string& key) {
    std::vector<Index> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto pos = s.find(',', start);
        const std::string tok = strip(s.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
        if (!tok.empty()) {
            long long v = 0;
            const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc() || ptr != tok.data() + tok.size() || v < 1)
                throw ArgumentError("'" + key + "' must be a comma-separated list of positive integers");
            out.push_back(Index(v));
        }
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

std::vector<std::string> parse_names(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(',', start);
        const std::string tok = strip(s.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
        if (!tok.empty()) out.push_back(tok);
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

Budget parse_budget(const Config& cfg, const std::string& key) {
    const std::string v = cfg.get_string(key, "auto");
    if (v == "auto") return std::nullopt;
    const long long n = cfg.get_int(key, 0);
    if (n < 1) throw ArgumentError("'" + key + "' must be a positive integer or \"auto\"");
    return Index(n);
}

}  // namespace

Config Config::parse(const std::string& text) {
    Config cfg;
    std::size_t line_no = 0, start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        // Comments start at a '#' outside quotes.
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') quoted = !quoted;
            if (line[i] == '#' && !quoted) {
                line.resize(i);
                break;
            }
        }
        if (strip(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected 'key = value'", line_no);
        store(cfg.values_, line.substr(0, eq), line.substr(eq + 1), line_no);
    }
    return cfg;
}

Config Config::load(const std::filesystem::path& path) { return parse(io::read_text(path)); }

void Config::set_override(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ArgumentError("override '" + assignment + "' is not of the form key=value");
    store(values_, assignment.substr(0, eq), assignment.substr(eq + 1), 0);
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const std::string& v = it->second;
    double out = 0.0;
    const char* first = v.data() + (!v.empty() && v.front() == '+' ? 1 : 0);
    const auto [ptr, ec] = std::from_chars(first, v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw ArgumentError("'" + key + "' must be numeric, got '" + v + "'");
    return out;
}

long long Config::get_int(const std::string& key, long long fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const std::string& v = it->second;
    long long out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw ArgumentError("'" + key + "' must be an integer, got '" + v + "'");
    return out;
}

std::string spectrum_kind_name(SpectrumKind k) {
    switch (k) {
        case SpectrumKind::exact_low_rank: return "exact-low-rank";
        case SpectrumKind::geometric: return "geometric";
        case SpectrumKind::power_law: return "power-law";
    }
    return "?";
}

std::string coherence_kind_name(CoherenceKind k) {
    switch (k) {
        case CoherenceKind::flat: return "flat";
        case CoherenceKind::uniform: return "uniform";
        case CoherenceKind::spiky: return "spiky";
    }
    return "?";
}

ExperimentConfig ExperimentConfig::from(const Config& cfg) {
    ExperimentConfig e;
    auto& s = e.synth;
    const std::string kind = cfg.get_string("synth.kind", "exact-low-rank");
    if (kind == "exact-low-rank") s.kind = SpectrumKind::exact_low_rank;
    else if (kind == "geometric" || kind == "geometric-spectrum") s.kind = SpectrumKind::geometric;
    else if (kind == "power-law" || kind == "power-law-spectrum") s.kind = SpectrumKind::power_law;
    else throw ArgumentError("unknown synth.kind '" + kind + "'");
    const std::string coh = cfg.get_string("synth.coherence", "flat");
    if (coh == "flat") s.coherence = CoherenceKind::flat;
    else if (coh == "uniform") s.coherence = CoherenceKind::uniform;
    else if (coh == "spiky") s.coherence = CoherenceKind::spiky;
    else throw ArgumentError("unknown synth.coherence '" + coh + "'");
    s.n = Index(cfg.get_int("synth.n", 100));
    s.m = Index(cfg.get_int("synth.m", s.n));
    e.r = Index(cfg.get_int("r", 1));
    s.r = Index(cfg.get_int("synth.r", e.r));
    s.decay = cfg.get_double("synth.decay", 0.5);
    s.spike_index = Index(cfg.get_int("synth.spike_index", 0));
    s.spike_weight = cfg.get_double("synth.spike_weight", 0.0);
    s.noise = cfg.get_double("synth.noise", 0.0);
    e.matrix_path = cfg.get_string("input.matrix", "");
    e.d = parse_budget(cfg, "d");
    e.omega = parse_budget(cfg, "omega");
    e.t = cfg.get_double("t", 3.0);
    e.trials = Index(cfg.get_int("trials", 1));
    e.ridge = cfg.get_double("ridge", 0.0);
    const long long seed = cfg.get_int("seed", 0);
    if (seed < 0) throw ArgumentError("seed must be nonnegative");
    e.seed = std::uint64_t(seed);
    e.checks = parse_names(cfg.get_string("checks", ""));
    e.sandwich_lambda_scale = cfg.get_double("sandwich.lambda_scale", 1.0);
    e.sandwich_delta = cfg.get_double("sandwich.delta", 0.5);
    e.d_grid = parse_list(cfg.get_string("sweep.d_grid", ""), "sweep.d_grid");
    e.omega_grid = parse_list(cfg.get_string("sweep.omega_grid", ""), "sweep.omega_grid");
    e.cur_c = Index(cfg.get_int("cur.c", 0));
    e.cur_r_rows = Index(cfg.get_int("cur.r_rows", e.cur_c));
    e.cur_k = Index(cfg.get_int("cur.k", e.r));

    if (e.r < 1) throw ArgumentError("r must be positive");
    if (e.trials < 1) throw ArgumentError("trials must be positive");
    if (!(e.t > 0.0)) throw ArgumentError("t must be positive");
    if (!(e.ridge >= 0.0)) throw ArgumentError("ridge must be nonnegative");
    if (!(e.sandwich_lambda_scale > 0.0)) throw ArgumentError("sandwich.lambda_scale must be positive");
    if (!(e.sandwich_delta > 0.0)) throw ArgumentError("sandwich.delta must be positive");
    if (e.matrix_path.empty()) s.validate();
    return e;
}

Json ExperimentConfig::to_json() const {
    Json j;
    if (matrix_path.empty()) {
        Json s;
        s["kind"] = spectrum_kind_name(synth.kind);
        s["n"] = synth.n;
        s["m"] = synth.m;
        s["r"] = synth.r;
        s["decay"] = synth.decay;
        s["coherence"] = coherence_kind_name(synth.coherence);
        if (synth.coherence == CoherenceKind::spiky) {
            s["spike_index"] = synth.spike_index;
            s["spike_weight"] = synth.spike_weight;
        }
        s["noise"] = synth.noise;
        j["synth"] = std::move(s);
    } else {
        j["input_matrix"] = matrix_path;
    }
    j["r"] = r;
    j["d"] = d ? Json(*d) : Json("auto");
    j["omega"] = omega ? Json(*omega) : Json("auto");
    j["t"] = t;
    j["trials"] = trials;
    j["ridge"] = ridge;
    j["seed"] = seed;
    j["rng"] = RngStream::algorithm;
    j["checks"] = checks;
    j["sandwich"] = {{"lambda_scale", sandwich_lambda_scale}, {"delta", sandwich_delta}};
    if (!d_grid.empty()) j["d_grid"] = d_grid;
    if (!omega_grid.empty()) j["omega_grid"] = omega_grid;
    if (cur_c > 0) j["cur"] = {{"c", cur_c}, {"r_rows", cur_r_rows}, {"k", cur_k}};
    return j;
}

}  // namespace curlow
