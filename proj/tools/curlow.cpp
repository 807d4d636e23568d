// Command-line front end: gen, recover, verify, sweep, cur.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "curlow/config.hpp"
#include "curlow/errors.hpp"
#include "curlow/experiment.hpp"

namespace {

struct SharedOptions {
    std::string config;
    std::optional<long long> seed;
    std::string out = ".";
    std::string format = "json";
    std::vector<std::string> overrides;
    std::string matrix;
};

void add_shared(CLI::App* cmd, SharedOptions& opts) {
    cmd->add_option("--config", opts.config, "configuration file (key = value lines)");
    cmd->add_option("--seed", opts.seed, "seed; overrides the config");
    cmd->add_option("--out", opts.out, "output directory")->capture_default_str();
    cmd->add_option("--format", opts.format, "report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--set", opts.overrides, "override a configuration key, e.g. --set synth.n=200");
}

curlow::ExperimentConfig resolve(const SharedOptions& opts) {
    curlow::Config cfg = opts.config.empty() ? curlow::Config{} : curlow::Config::load(opts.config);
    for (const auto& o : opts.overrides) cfg.set_override(o);
    if (!opts.matrix.empty()) cfg.set("input.matrix", opts.matrix);
    if (opts.seed) {
        if (*opts.seed < 0) throw curlow::ArgumentError("seed must be nonnegative");
        cfg.set("seed", std::to_string(*opts.seed));
    }
    return curlow::ExperimentConfig::from(cfg);
}

curlow::ReportFormat format_of(const SharedOptions& opts) {
    return opts.format == "csv" ? curlow::ReportFormat::csv : curlow::ReportFormat::json;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Low-rank recovery from sampled rows, columns and entries"};
    app.require_subcommand(1);

    SharedOptions opts;
    bool write_mhat = false;
    std::optional<long long> cur_c, cur_r_rows, cur_k;

    auto* gen = app.add_subcommand("gen", "generate a synthetic matrix with its spectrum and properties");
    add_shared(gen, opts);

    auto* rec = app.add_subcommand("recover", "sample M and recover it through the core regression");
    add_shared(rec, opts);
    rec->add_option("--matrix", opts.matrix, "read M from this file instead of generating it");
    rec->add_flag("--write-mhat", write_mhat, "also write the recovered matrix");

    auto* ver = app.add_subcommand("verify", "run the configured bound checks over seeded trials");
    add_shared(ver, opts);
    ver->add_option("--matrix", opts.matrix, "read M from this file instead of generating it");

    auto* swp = app.add_subcommand("sweep", "tabulate error and observation counts over a budget grid");
    add_shared(swp, opts);
    swp->add_option("--matrix", opts.matrix, "read M from this file instead of generating it");

    auto* cur = app.add_subcommand("cur", "classic CUR baseline against the best rank-k approximation");
    add_shared(cur, opts);
    cur->add_option("--matrix", opts.matrix, "read M from this file instead of generating it");
    cur->add_option("--c", cur_c, "number of sampled columns");
    cur->add_option("--r-rows", cur_r_rows, "number of sampled rows");
    cur->add_option("--k", cur_k, "comparison rank");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? curlow::exit_ok : curlow::exit_usage;
    }

    try {
        if (*gen) return curlow::cmd_gen(resolve(opts), opts.out);
        if (*rec) return curlow::cmd_recover(resolve(opts), opts.out, write_mhat);
        if (*ver) return curlow::cmd_verify(resolve(opts), opts.out, format_of(opts));
        if (*swp) return curlow::cmd_sweep(resolve(opts), opts.out, format_of(opts));
        if (*cur) {
            if (cur_c) opts.overrides.push_back("cur.c=" + std::to_string(*cur_c));
            if (cur_r_rows) opts.overrides.push_back("cur.r_rows=" + std::to_string(*cur_r_rows));
            if (cur_k) opts.overrides.push_back("cur.k=" + std::to_string(*cur_k));
            return curlow::cmd_cur(resolve(opts), opts.out);
        }
    } catch (const curlow::IllPosedError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return curlow::exit_ill_posed;
    } catch (const curlow::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return curlow::exit_io;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return curlow::exit_usage;
    }
    return curlow::exit_usage;
}
