#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#ifndef BIVAR_CLI
#error "BIVAR_CLI must name the command-line binary"
#endif

namespace {

struct Outcome {
    int status;
    std::string out;
};

Outcome run(const std::string &args)
{
    const std::string cmd = std::string(BIVAR_CLI) + " " + args + " 2>&1";
    FILE *p = popen(cmd.c_str(), "r");
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, p)) {
        out.append(buf, n);
    }
    const int rc = pclose(p);
    return {WIFEXITED(rc) ? WEXITSTATUS(rc) : -1, out};
}

std::string temp_path(const std::string &name) { return ::testing::TempDir() + name; }

} // namespace

TEST(Cli, Transition)
{
    const Outcome r = run("transition --P \"z^2\" --n 1 --m 3");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "-x^4*a^-1*b^-3 - x^3*a^-2*b^-2 + x*a^-1*b^-2 - x^2*a^-3*b^-1\n");
}

TEST(Cli, TransitionDefaultsToSmallestM)
{
    const Outcome r = run("transition --P \"z^2\" --n 3 --format json");
    ASSERT_EQ(r.status, 0) << r.out;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["m"], 1);
    EXPECT_EQ(j["f"], "x*a^-1*b^-2 - x^2*a^-3*b^-1");
}

TEST(Cli, Classify)
{
    const Outcome r = run("classify --f \"x^2*a^-1*b^-1\"");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "Nontrivial: deg P(0,0,x) = 2\n");
}

TEST(Cli, VerifyJson)
{
    const Outcome r = run("verify ex48 --format json");
    ASSERT_EQ(r.status, 0) << r.out;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["version"], 1);
    EXPECT_EQ(j["checks"][0]["check_id"], "ex48");
    EXPECT_EQ(j["checks"][0]["status"], "pass");
}

TEST(Cli, VerifyAll)
{
    const Outcome r = run("verify all");
    EXPECT_EQ(r.status, 0) << r.out;
    EXPECT_NE(r.out.find("16/16 checks passed"), std::string::npos);
}

TEST(Cli, Example47OverFiniteField)
{
    EXPECT_EQ(run("--field fp:11 verify ex47").status, 0);
    EXPECT_EQ(run("verify ex47 --field fp:7").status, 1);
}

TEST(Cli, FailedCheckExitsOne)
{
    const Outcome r = run("prop45 --fb \"a^2*x*b^-2 - x^2*b^-1\" --gb \"a^2*x*b^-2\" --m 3 --Q \"1/2*x\"");
    EXPECT_EQ(r.status, 1);
    EXPECT_NE(r.out.find("residual"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo)
{
    EXPECT_EQ(run("transition --P \"z^2 +\" --n 1").status, 2);
    EXPECT_EQ(run("transition --P \"z^2\"").status, 2);
    EXPECT_EQ(run("verify nosuch").status, 2);
    EXPECT_EQ(run("--field fp:9 classify --f x").status, 2);
    EXPECT_EQ(run("frobnicate").status, 2);
    EXPECT_EQ(run("--help").status, 0);
}

TEST(Cli, ParseErrorPointsAtPosition)
{
    const Outcome r = run("classify --f \"x^2 + * b\"");
    EXPECT_EQ(r.status, 2);
    EXPECT_NE(r.out.find("      ^"), std::string::npos) << r.out;
}

TEST(Cli, A1Equiv)
{
    EXPECT_EQ(run("a1equiv --f \"x*a^-1*b^-1\" --g \"2*x*a^-1*b^-1 + x^2*a^-5\"").status, 0);
    EXPECT_EQ(run("a1equiv --f \"x*a^-1*b^-1\" --g \"x^2*a^-1*b^-1\"").status, 1);
}

TEST(Cli, Search45)
{
    const Outcome r = run("search45 --fb \"a^2*x*b^-2 - x^2*b^-1\" --gb \"a^2*x*b^-2 - x^2*b^-1 - a*x^3*b^-2 - 5/4*a^2*x^4*b^-3\" "
                      "--m 3 --deg 1 --pool \"0,1/2,-1/2,1,-1\"");
    EXPECT_EQ(r.status, 0) << r.out;
    EXPECT_NE(r.out.find("Q = 1/2*x"), std::string::npos) << r.out;
}

TEST(Cli, MakeAndExtendCertificate)
{
    const std::string cert = temp_path("ex35.json"), ext = temp_path("ex35_ext.json");
    ASSERT_EQ(run("bivar make --example ex35 --format json --out " + cert).status, 0);
    const Outcome r = run("bivar extend --cert " + cert + " --side b --m 1 --n 1 --Q \"x^2\" --format json --out " + ext);
    ASSERT_EQ(r.status, 0) << r.out;
    std::ifstream in(ext);
    const auto j = nlohmann::json::parse(in);
    EXPECT_EQ(j["certificate"]["omega"], "b*x^2 + a*x + b*y");
    EXPECT_EQ(j["certificate"]["f"], "x*a^-1*b^-1");
    EXPECT_EQ(j["checks"][0]["status"], "pass");
    // the extended certificate can itself be extended
    EXPECT_EQ(run("bivar extend --cert " + ext + " --side a --m 1 --n 1 --Q x").status, 0);
}

TEST(Cli, ExtendRejectsMissingFile)
{
    EXPECT_EQ(run("bivar extend --cert /nonexistent.json --side a --m 1 --n 1 --Q x").status, 2);
}
