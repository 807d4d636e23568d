#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "curlow/io.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path& workdir() {
    static const fs::path dir = [] {
        // ctest may run the cases of this binary as concurrent processes.
        const auto d = fs::temp_directory_path() / ("curlow_test_cli_" + std::to_string(::getpid()));
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int run(const std::string& args) {
    const std::string cmd = std::string("\"") + CURLOW_CLI + "\" " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path out_dir(const std::string& name) {
    const auto d = workdir() / name;
    fs::create_directories(d);
    return d;
}

std::string quoted(const fs::path& p) { return "\"" + p.string() + "\""; }

}  // namespace

TEST(Cli, GenWritesArtifacts) {
    const auto out = out_dir("gen");
    EXPECT_EQ(run("gen --set synth.n=30 --set r=2 --out " + quoted(out)), 0);
    EXPECT_TRUE(fs::exists(out / "M.mtx"));
    EXPECT_TRUE(fs::exists(out / "spectrum.csv"));
    EXPECT_TRUE(fs::exists(out / "properties.json"));
    EXPECT_EQ(curlow::io::read_matrix(out / "M.mtx").rows(), 30);
}

TEST(Cli, RecoverFromGeneratedMatrix) {
    const auto g = out_dir("gen_for_recover");
    ASSERT_EQ(run("gen --set synth.n=40 --set synth.m=30 --set r=2 --out " + quoted(g)), 0);
    const auto out = out_dir("recover");
    EXPECT_EQ(run("recover --matrix " + quoted(g / "M.mtx") + " --set r=2 --set d=10 --set omega=200 --write-mhat --out " +
                  quoted(out)),
              0);
    for (const char* f : {"omega.csv", "col_idx.txt", "row_idx.txt", "recovery.json", "M_hat.mtx"})
        EXPECT_TRUE(fs::exists(out / f)) << f;
    const auto M = curlow::io::read_matrix(g / "M.mtx");
    const auto M_hat = curlow::io::read_matrix(out / "M_hat.mtx");
    EXPECT_LE((M - M_hat).norm(), 1e-8 * M.norm());
}

TEST(Cli, UsageErrorsExitOne) {
    EXPECT_EQ(run("frobnicate"), 1);
    EXPECT_EQ(run("gen --no-such-flag"), 1);
    EXPECT_EQ(run("gen --set bogus.key=1 --out " + quoted(out_dir("usage"))), 1);
    EXPECT_EQ(run("verify --set checks=\\\"nonsense\\\" --out " + quoted(out_dir("usage"))), 1);
    EXPECT_EQ(run("gen --format xml"), 1);
    EXPECT_EQ(run("--help"), 0);
}

TEST(Cli, IllPosedExitsTwo) {
    const auto out = out_dir("ill");
    EXPECT_EQ(run("recover --set synth.n=20 --set r=3 --set d=3 --set omega=2 --out " + quoted(out)), 2);
    EXPECT_TRUE(fs::exists(out / "recovery.json"));
    EXPECT_NE(curlow::io::read_text(out / "recovery.json").find("ill_posed"), std::string::npos);
    EXPECT_EQ(run("recover --set synth.n=20 --set r=3 --set d=3 --set omega=2 --set ridge=0.1 --out " + quoted(out)), 0);
}

TEST(Cli, IoErrorsExitThree) {
    EXPECT_EQ(run("recover --matrix " + quoted(workdir() / "missing.mtx")), 3);
    EXPECT_EQ(run("gen --config " + quoted(workdir() / "missing.cfg")), 3);
}

TEST(Cli, VerifyCsvAndSweepAndCur) {
    const auto cfg = workdir() / "small.cfg";
    curlow::io::write_text(cfg, "synth.n = 30\nr = 2\nd = 10\nomega = 200\ntrials = 2\nchecks = \"all\"\n"
                                "sweep.d_grid = \"4,8\"\ncur.c = 8\n");
    const auto v = out_dir("verify_csv");
    EXPECT_EQ(run("verify --config " + quoted(cfg) + " --format csv --out " + quoted(v)), 0);
    EXPECT_TRUE(fs::exists(v / "verify.csv"));
    EXPECT_TRUE(fs::exists(v / "verify_summary.csv"));
    const auto s = out_dir("sweep");
    EXPECT_EQ(run("sweep --config " + quoted(cfg) + " --out " + quoted(s)), 0);
    EXPECT_TRUE(fs::exists(s / "sweep.csv"));
    EXPECT_TRUE(fs::exists(s / "sweep.json"));
    const auto c = out_dir("cur");
    EXPECT_EQ(run("cur --config " + quoted(cfg) + " --k 2 --out " + quoted(c)), 0);
    EXPECT_TRUE(fs::exists(c / "cur.json"));
    EXPECT_EQ(run("cur --set synth.n=30 --out " + quoted(c)), 1);
}
