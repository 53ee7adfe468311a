#include <gtest/gtest.h>

#include "bivar/suite.hpp"

using namespace bivar;

class Suite : public ::testing::TestWithParam<std::string> {};

TEST_P(Suite, PassesWithDefaults)
{
    const VerificationReport r = run_verify(GetParam());
    const Step *s = r.first_failure();
    EXPECT_TRUE(r.passed()) << (s ? s->name + ": " + s->residual : r.error_message);
    EXPECT_EQ(r.check_id, GetParam());
}

INSTANTIATE_TEST_SUITE_P(Ids, Suite, ::testing::ValuesIn(verify_ids()));

TEST(Suite, IdsAreTheSixteenChecks)
{
    const std::vector<std::string> expected{"ex23", "ex24", "ex312", "ex35", "ex43", "ex46", "ex47", "ex48",
                                            "ex66", "lemma21", "lemma44", "lemma52", "lemma61", "prop22", "prop63", "thm12"};
    EXPECT_EQ(verify_ids(), expected);
    EXPECT_THROW(run_verify("ex99"), Error);
}

TEST(Suite, Example47OverF11)
{
    VerifyParams p;
    p.field = Field::prime(11);
    EXPECT_TRUE(run_verify("ex47", p).passed());
    p.field = Field::prime(5);
    EXPECT_EQ(run_verify("ex47", p).status(), "error");
    p.field = Field::rationals();
    EXPECT_EQ(run_verify("ex47", p).status(), "error");
}

TEST(Suite, ParameterOverrides)
{
    VerifyParams p;
    p.P = "z^3 + 2*z";
    p.n = 2;
    EXPECT_TRUE(run_verify("thm12", p).passed());
    EXPECT_EQ(run_verify("thm12", p).inputs.size(), 1u);
    VerifyParams q;
    q.m = 3;
    q.n = 2;
    EXPECT_TRUE(run_verify("ex35", q).passed());
}

TEST(Suite, Prop22RegressionValue)
{
    const VerificationReport r = run_verify("prop22");
    ASSERT_FALSE(r.witness.empty());
    EXPECT_EQ(r.witness.back(), (std::pair<std::string, std::string>{"s", "3"}));
}

TEST(Suite, ParallelRunMatchesSequential)
{
    const auto seq = verify_all({}, false);
    const auto par = verify_all({}, true);
    ASSERT_EQ(seq.size(), par.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
        EXPECT_EQ(seq[i].check_id, par[i].check_id);
        EXPECT_EQ(seq[i].status(), par[i].status());
        EXPECT_EQ(seq[i].witness, par[i].witness);
    }
}
