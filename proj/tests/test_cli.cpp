#include <cstdio>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "awf/suites.hpp"

using namespace awf;

namespace {

struct Run {
    int status;
    std::string out;
};

Run run(const std::string& args)
{
    const std::string cmd = std::string(AWF_CLI_PATH) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, p))
        out.append(buf, n);
    const int st = pclose(p);
    return {WEXITSTATUS(st), out};
}

nlohmann::json read_json(const std::string& path)
{
    std::ifstream f(path);
    return nlohmann::json::parse(f);
}

}  // namespace

TEST(Eval, SpecExamples)
{
    EXPECT_NEAR(std::abs(eval_command("b b*", "psi", 0.5, false).value - 0.8), 0.0, 1e-15);
    EXPECT_EQ(eval_command("S S S*", "tau", 0.5, false).value, Complex(0.0));
    const auto om = eval_command("e(0,0)", "omega", 0.5, true);
    EXPECT_EQ(om.exact, "1 - q^2");
    const auto r = eval_command("b b*", "", 0.5, false);
    EXPECT_EQ(r.state, "psi");
    ASSERT_TRUE(r.cross_check);
    EXPECT_NEAR(std::abs(*r.cross_check - r.value), 0.0, 1e-10);
    EXPECT_THROW(eval_command("a b", "tau", 0.5, false), state_mismatch);
    EXPECT_THROW(eval_command("F1:S", "psi", 0.5, false), state_mismatch);
}

TEST(Eval, FreeWord)
{
    const auto r = eval_command("F1:S . F2:b b* . F1:S*", "", 0.5, true);
    EXPECT_EQ(r.state, "phi");
    EXPECT_NEAR(r.value.real(), 0.8, 1e-15);
    EXPECT_NEAR(eval_command("F1:S . F2:b . F1:S* . F2:b*", "phi", 0.5, false).value.real(), 0.0, 1e-15);
}

TEST(Suites, ExampleCounts)
{
    SuiteSpec s;
    s.suite = "lemma16";
    auto r = run_suite(s);
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.checks.records.size(), 200u);
    s.suite = "haar-u";
    r = run_suite(s);
    EXPECT_TRUE(r.pass());
    std::size_t moments = 0;
    for (const auto& c : r.checks.records)
        moments += c.name.rfind("phi(u^", 0) == 0;
    EXPECT_EQ(moments, 16u);
    s.suite = "lemma23";
    EXPECT_TRUE(run_suite(s).pass());
    s.suite = "bogus";
    EXPECT_THROW(run_suite(s), std::invalid_argument);
}

TEST(Suites, PrecisionFailureIsAnOutcome)
{
    SuiteSpec s;
    s.suite = "lemma16";
    s.q = 0.999999;
    s.tol = 1e-14;
    const auto r = run_suite(s);
    EXPECT_FALSE(r.pass());
    EXPECT_EQ(r.checks.records.front().outcome, "precision-failure");
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run("list-suites").status, 0);
    EXPECT_EQ(run("verify corner").status, 0);
    EXPECT_EQ(run("verify lemma16 --q 0.999999 --tol 1e-14").status, 1);
    EXPECT_EQ(run("eval \"e(1,x)\"").status, 2);
    EXPECT_EQ(run("verify nosuch").status, 2);
    EXPECT_EQ(run("eval b --q 1.5").status, 2);
    EXPECT_EQ(run("").status, 2);
}

TEST(Cli, EvalOutput)
{
    const auto r = run("eval --q 0.5 --state psi \"b b*\"");
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("value:       0.8"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("tail <="), std::string::npos);
}

TEST(Cli, DeterministicReports)
{
    const std::string a = ::testing::TempDir() + "awf_a.json", b = ::testing::TempDir() + "awf_b.json";
    ASSERT_EQ(run("verify theorem --seed 7 --out " + a).status, 0);
    ASSERT_EQ(run("verify theorem --seed 7 --out " + b).status, 0);
    auto ja = read_json(a), jb = read_json(b);
    for (auto* j : {&ja, &jb}) {
        j->erase("timestamp");
        j->erase("wall_time_seconds");
    }
    EXPECT_EQ(ja.dump(), jb.dump());
    EXPECT_EQ(ja.at("schema_version"), report_schema_version);
    EXPECT_EQ(ja.at("seed"), 7);
    EXPECT_EQ(ja.at("summary").at("checks"), 100);
}

TEST(Cli, EnvironmentOverride)
{
    const std::string a = ::testing::TempDir() + "awf_env.json";
    ASSERT_EQ(run("verify corner --out " + a).status, 0);
    EXPECT_EQ(read_json(a).at("parameters").at("q"), 0.5);
    ASSERT_EQ(std::system(("AWF_Q=0.25 " + std::string(AWF_CLI_PATH) + " verify corner --out " + a + " > /dev/null").c_str()), 0);
    EXPECT_EQ(read_json(a).at("parameters").at("q"), 0.25);
}

TEST(Cli, ClassifyF)
{
    const auto r = run("classify-f --F \"1,0,0,0,0,0,0.5,0\"");
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("rho = lambda1/lambda2 = 0.25"), std::string::npos) << r.out;
    EXPECT_NE(run("classify-f --F \"1,0,0,0,0,0,1,0\"").out.find("boundary"), std::string::npos);
    EXPECT_EQ(run("classify-f --F \"1,0,2,0,2,0,4,0\"").status, 2);
    EXPECT_EQ(run("classify-f --F \"1,2\"").status, 2);
}
