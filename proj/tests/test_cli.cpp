#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code = -1;
    std::string output;
};

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("onlinectl-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    CliRun run(const std::string& args) const {
        const auto log = dir_ / "log.txt";
        const std::string cmd = std::string(ONLINECTL_PATH) + " " + args + " > " + log.string() + " 2>&1";
        CliRun r;
        const int status = std::system(cmd.c_str());
        r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        r.output = read(log);
        return r;
    }

    static std::string read(const fs::path& p) {
        std::ifstream in(p);
        std::stringstream s;
        s << in.rdbuf();
        return s.str();
    }

    std::string out(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        out.push_back(line);
    }
    return out;
}

} // namespace

TEST_F(Cli, ColourSweepSchema) {
    auto r = run("colour --solver first-fit --d 2 --n 12 --seed 1 --seeds 100 --out-dir " + out("a"));
    ASSERT_EQ(r.code, 0) << r.output;
    auto rows = lines(read(out("a") + "/colour.csv"));
    ASSERT_EQ(rows.size(), 101u);
    EXPECT_EQ(rows[0], "kind,n,d_or_k,online_cost,offline_cost,ratio,seed");
    EXPECT_EQ(rows[1].rfind("colour,12,d=2,", 0), 0u);
    EXPECT_TRUE(rows[100].ends_with(",100"));
    EXPECT_TRUE(fs::exists(out("a") + "/instances/colour-seed1.jsonl"));
    EXPECT_NE(r.output.find("max ratio"), std::string::npos);
}

TEST_F(Cli, RerunIsByteIdentical) {
    const std::string args = "pack --n 10 --d 6 --seed 4 --seeds 5 --out-dir ";
    ASSERT_EQ(run(args + out("a")).code, 0);
    ASSERT_EQ(run(args + out("b")).code, 0);
    EXPECT_EQ(read(out("a") + "/pack.csv"), read(out("b") + "/pack.csv"));
    EXPECT_EQ(read(out("a") + "/instances/pack-seed4.jsonl"), read(out("b") + "/instances/pack-seed4.jsonl"));
}

TEST_F(Cli, UnknownSubcommandFails) {
    auto r = run("fly --out-dir " + out("a"));
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.output.find("fly"), std::string::npos);
}

TEST_F(Cli, UnknownSolverFails) { EXPECT_EQ(run("colour --solver psychic --out-dir " + out("a")).code, 2); }

TEST_F(Cli, OracleCapExitCode) {
    auto r = run("colour --solver first-fit --d 3 --n 30 --oracle-cap 10 --out-dir " + out("a"));
    EXPECT_EQ(r.code, 3) << r.output;
}

TEST_F(Cli, ConfigFileWithFlagOverride) {
    {
        std::ofstream cfg(out("run.ini"));
        cfg << "subcommand=chains\nk=2\nn=20\nseeds=3\n";
    }
    auto r = run("--config " + out("run.ini") + " --n 15 --out-dir " + out("a"));
    ASSERT_EQ(r.code, 0) << r.output;
    auto rows = lines(read(out("a") + "/chains.csv"));
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[1].rfind("chains,15,k=2,", 0), 0u);
}

TEST_F(Cli, EverySubcommandRuns) {
    for (const std::string sub : {"colour", "pack", "chains", "reduce", "wkl", "analysis"}) {
        auto r = run(sub + " --n 8 --seeds 2 --out-dir " + out("a"));
        EXPECT_EQ(r.code, 0) << sub << ": " << r.output;
        EXPECT_TRUE(fs::exists(out("a") + "/" + sub + ".csv")) << sub;
    }
}

TEST_F(Cli, BeanAdversaryRows) {
    auto r = run("colour --solver cbip --t 4 --out-dir " + out("a"));
    ASSERT_EQ(r.code, 0) << r.output;
    auto rows = lines(read(out("a") + "/colour.csv"));
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[1].rfind("bean,", 0), 0u);
}
