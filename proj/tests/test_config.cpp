#include <gtest/gtest.h>

#include "curlow/config.hpp"
#include "curlow/experiment.hpp"

using namespace curlow;

TEST(ConfigParse, KeysValuesAndComments) {
    const auto cfg = Config::parse(
        "# experiment\n"
        "synth.kind = \"geometric\"   # spectrum\n"
        "synth.n = 40\n"
        "\n"
        "  synth.decay=0.25\n"
        "input.matrix = \"dir/with#hash.mtx\"\n");
    EXPECT_EQ(cfg.get_string("synth.kind", ""), "geometric");
    EXPECT_EQ(cfg.get_int("synth.n", 0), 40);
    EXPECT_DOUBLE_EQ(cfg.get_double("synth.decay", 0.0), 0.25);
    EXPECT_EQ(cfg.get_string("input.matrix", ""), "dir/with#hash.mtx");
    EXPECT_FALSE(cfg.has("r"));
    EXPECT_EQ(cfg.get_int("r", 7), 7);
}

TEST(ConfigParse, ErrorsCarryLineNumbers) {
    const auto line_of = [](const std::string& text) -> std::size_t {
        try {
            Config::parse(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 999;
    };
    EXPECT_EQ(line_of("r = 1\nbogus.key = 2\n"), 2u);
    EXPECT_EQ(line_of("r = 1\n\nt 3\n"), 3u);
    EXPECT_EQ(line_of("synth.kind = geometric\n"), 1u);
    EXPECT_EQ(line_of("synth.kind = \"geometric\n"), 1u);
    EXPECT_EQ(line_of("r =\n"), 1u);
    EXPECT_EQ(line_of("r = 1x\n"), 1u);
}

TEST(ConfigParse, OverridesReplaceFileValues) {
    auto cfg = Config::parse("r = 2\n");
    cfg.set_override("r=5");
    cfg.set_override("d=\"auto\"");
    EXPECT_EQ(cfg.get_int("r", 0), 5);
    EXPECT_EQ(cfg.get_string("d", ""), "auto");
    EXPECT_THROW(cfg.set_override("r"), ArgumentError);
    EXPECT_THROW(cfg.set_override("nope=1"), ParseError);
}

TEST(ConfigParse, TypedGettersReject) {
    auto cfg = Config::parse("synth.kind = \"x\"\nr = 2.5\n");
    EXPECT_THROW(cfg.get_double("synth.kind", 0.0), ArgumentError);
    EXPECT_THROW(cfg.get_int("r", 0), ArgumentError);
}

TEST(ExperimentConfig, Defaults) {
    const auto e = ExperimentConfig::from(Config::parse(""));
    EXPECT_EQ(e.r, 1);
    EXPECT_FALSE(e.d.has_value());
    EXPECT_FALSE(e.omega.has_value());
    EXPECT_DOUBLE_EQ(e.t, 3.0);
    EXPECT_EQ(e.trials, 1);
    EXPECT_EQ(e.synth.n, 100);
    EXPECT_EQ(e.synth.m, 100);
    EXPECT_EQ(e.synth.kind, SpectrumKind::exact_low_rank);
    EXPECT_EQ(e.synth.coherence, CoherenceKind::flat);
    EXPECT_EQ(e.cur_k, 1);
}

TEST(ExperimentConfig, ExplicitValues) {
    const auto e = ExperimentConfig::from(Config::parse(
        "synth.kind = \"power-law-spectrum\"\nsynth.decay = 1.5\nsynth.n = 30\nsynth.m = 20\n"
        "r = 3\nd = 10\nomega = \"auto\"\ntrials = 4\nseed = 9\nchecks = \"halko, delta\"\n"
        "sweep.d_grid = \"4,8,16\"\ncur.c = 6\n"));
    EXPECT_EQ(e.synth.kind, SpectrumKind::power_law);
    EXPECT_EQ(e.synth.n, 30);
    EXPECT_EQ(e.synth.m, 20);
    EXPECT_EQ(e.synth.r, 3);
    EXPECT_EQ(e.d, Budget{10});
    EXPECT_FALSE(e.omega.has_value());
    EXPECT_EQ(e.seed, 9u);
    EXPECT_EQ(e.checks, (std::vector<std::string>{"halko", "delta"}));
    EXPECT_EQ(e.d_grid, (std::vector<Index>{4, 8, 16}));
    EXPECT_EQ(e.cur_c, 6);
    EXPECT_EQ(e.cur_r_rows, 6);
    EXPECT_EQ(e.cur_k, 3);
}

TEST(ExperimentConfig, Validation) {
    for (const char* text : {"r = 0\n", "trials = 0\n", "t = 0\n", "ridge = -1\n", "seed = -3\n",
                             "synth.kind = \"cubic\"\n", "synth.coherence = \"odd\"\n", "d = 0\n",
                             "synth.kind = \"geometric\"\nsynth.decay = 2\n", "sweep.d_grid = \"4,x\"\n",
                             "sandwich.delta = 0\n"})
        EXPECT_THROW(ExperimentConfig::from(Config::parse(text)), ArgumentError) << text;
}

TEST(ExperimentConfig, JsonIsResolved) {
    const auto e = ExperimentConfig::from(Config::parse("synth.coherence = \"spiky\"\nsynth.spike_weight = 0.5\nd = 7\n"));
    const Json j = e.to_json();
    EXPECT_EQ(j["synth"]["kind"], "exact-low-rank");
    EXPECT_EQ(j["synth"]["coherence"], "spiky");
    EXPECT_EQ(j["synth"]["spike_weight"], 0.5);
    EXPECT_EQ(j["d"], 7);
    EXPECT_EQ(j["omega"], "auto");
    EXPECT_EQ(j["rng"], "splitmix64-counter");
    const auto from_file = ExperimentConfig::from(Config::parse("input.matrix = \"m.mtx\"\n")).to_json();
    EXPECT_EQ(from_file["input_matrix"], "m.mtx");
    EXPECT_FALSE(from_file.contains("synth"));
}

TEST(Checks, ExpandAllAndRejectUnknown) {
    EXPECT_EQ(expand_checks({"all"}), known_checks());
    EXPECT_EQ(expand_checks({"halko"}), std::vector<std::string>{"halko"});
    EXPECT_THROW(expand_checks({"nonsense"}), ArgumentError);
}
