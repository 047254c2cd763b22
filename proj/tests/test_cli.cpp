#include <json.hpp>

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Run {
    int status;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(HYPERSTAR_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, {}};
    std::string out;
    char buf[4096];
    for (std::size_t got; (got = fread(buf, 1, sizeof buf, pipe)) > 0;) out.append(buf, got);
    const int raw = pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir = fs::temp_directory_path() / ("hyperstar_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }
    std::string path(const std::string& name) const { return (dir / name).string(); }
    void write(const std::string& name, const std::string& text) const { std::ofstream(dir / name) << text; }
    fs::path dir;
};

} // namespace

TEST_F(Cli, SampleFullHypergraph) {
    auto r = run("sample --n 4 --k 3 --regime p=1 --seed 7 --out " + path("t.hg"));
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(slurp(path("t.hg")), "4 3 4\n0 1 2\n0 1 3\n0 2 3\n1 2 3\n");
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["m"], 4);
    EXPECT_EQ(j["seed"], 7);
}

TEST_F(Cli, SampleInfeasibleRegime) {
    const std::string cmd = std::string(HYPERSTAR_CLI_PATH) + " sample --n 5 --k 3 --regime lambda=10 --seed 1 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    char buf[512] = {};
    std::string err;
    for (std::size_t got; (got = fread(buf, 1, sizeof buf, pipe)) > 0;) err.append(buf, got);
    const int raw = pclose(pipe);
    EXPECT_EQ(WEXITSTATUS(raw), 1);
    EXPECT_NE(err.find("> 1"), std::string::npos) << err;
}

TEST_F(Cli, SampleDeterministic) {
    ASSERT_EQ(run("sample --n 100 --k 3 --regime log+c=0 --seed 1 --out " + path("a.hg")).status, 0);
    ASSERT_EQ(run("sample --n 100 --k 3 --regime log+c=0 --seed 1 --out " + path("b.hg")).status, 0);
    EXPECT_EQ(slurp(path("a.hg")), slurp(path("b.hg")));
    auto env = run("sample --n 100 --k 3 --regime log+c=0 --out " + path("c.hg"));
    ASSERT_EQ(env.status, 0);
    EXPECT_EQ(nlohmann::json::parse(env.out)["seed"], 0);
}

TEST_F(Cli, Census) {
    write("one.hg", "4 3 1\n0 1 2\n");
    write("empty.hg", "4 3 0\n");
    write("bad.hg", "4 3 1\n0 1 9\n");
    auto a = run("census " + path("one.hg") + " --json");
    ASSERT_EQ(a.status, 0);
    auto j = nlohmann::json::parse(a.out);
    EXPECT_EQ(j["X"], (nlohmann::json{{"1", 3}}));
    EXPECT_EQ(j["X0"], 0);
    EXPECT_EQ(j["Y"], 1);
    EXPECT_EQ(nlohmann::json::parse(run("census " + path("empty.hg")).out)["X0"], 6);
    EXPECT_EQ(run("census " + path("bad.hg")).status, 1);
    EXPECT_EQ(run("census " + path("missing.hg")).status, 1);
    EXPECT_NE(run("census --csv " + path("one.hg")).out.find("X1,3"), std::string::npos);
}

TEST_F(Cli, ExpectAndLimits) {
    auto e = run("expect --n 4 --k 3 --p 0.5 --r 1");
    ASSERT_EQ(e.status, 0);
    EXPECT_DOUBLE_EQ(nlohmann::json::parse(e.out)["E_X"]["1"].get<double>(), 0.75);
    auto l = run("limits --k 3 --regime halfloglog+w=0");
    ASSERT_EQ(l.status, 0);
    auto terms = nlohmann::json::parse(l.out)["limits"];
    EXPECT_EQ(terms[0]["statistic"], "X1");
    EXPECT_DOUBLE_EQ(terms[0]["mean"].get<double>(), 0.5);
    EXPECT_EQ(run("limits --k 3 --regime p=0.1").status, 1);
    EXPECT_EQ(run("expect --n 4 --k 3").status, 2);
    EXPECT_EQ(run("expect --n 4 --k 3 --p 0.5 --regime lambda=1").status, 2);
}

TEST_F(Cli, MatrixAndCheck) {
    write("t.hg", "4 3 1\n0 1 2\n");
    auto c = run("check " + path("t.hg") + " --kernel codegree --tol 1e-8");
    EXPECT_EQ(c.status, 0);
    EXPECT_NE(c.out.find("matched"), std::string::npos);
    auto j = run("check " + path("t.hg") + " --json");
    EXPECT_TRUE(nlohmann::json::parse(j.out)["matched"].get<bool>());
    EXPECT_EQ(run("check " + path("t.hg") + " --kernel randomwalk").status, 1);
    ASSERT_EQ(run("matrix " + path("t.hg") + " --out " + path("m.csv") + " --quotient " + path("q.csv")).status, 0);
    EXPECT_EQ(slurp(path("m.csv")), "1,1,1,0\n1,1,1,0\n1,1,1,0\n0,0,0,0\n");
    EXPECT_EQ(slurp(path("q.csv")), "# parts: {0,1,2} {3}\n3,0\n0,0\n");
    EXPECT_EQ(run("matrix " + path("t.hg") + " --kernel nope").status, 2);
}

TEST_F(Cli, ExperimentDeterministicAcrossWorkers) {
    const std::string base = "experiment --n 4 --k 3 --regime p=0.5 --trials 100000 --seed 9 ";
    ASSERT_EQ(run(base + "--workers 4 --out " + path("w4.json")).status, 0);
    ASSERT_EQ(run(base + "--workers 1 --out " + path("w1.json")).status, 0);
    EXPECT_EQ(slurp(path("w4.json")), slurp(path("w1.json")));
    auto j = nlohmann::json::parse(slurp(path("w1.json")));
    EXPECT_EQ(j["plan"]["master_seed"], 9);
    EXPECT_EQ(j["results"][0]["trials"], 100000);

    write("plan.json", R"({"n_list":[100],"k":3,"regime":"p=0","trials":10,"value_cap":5000})");
    auto p = run("experiment --plan " + path("plan.json") + " --histograms " + path("hist"));
    ASSERT_EQ(p.status, 0);
    EXPECT_EQ(nlohmann::json::parse(p.out)["results"][0]["pmf"]["X0"]["values"]["4950"], 1.0);
    EXPECT_TRUE(fs::exists(dir / "hist" / "n100_X0.csv"));
}

TEST_F(Cli, UsageErrors) {
    EXPECT_EQ(run("").status, 2);
    EXPECT_EQ(run("bogus").status, 2);
    EXPECT_EQ(run("sample --n 4 --k 3").status, 2);
    EXPECT_EQ(run("sample --n 4 --k 3 --regime wat=1").status, 2);
    EXPECT_EQ(run("experiment --trials 5").status, 2);
    EXPECT_EQ(run("--help").status, 0);
    EXPECT_EQ(run("--version").status, 0);
}
