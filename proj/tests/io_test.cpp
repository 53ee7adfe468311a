#include <gtest/gtest.h>

#include "bivar/io.hpp"
#include "bivar/suite.hpp"

using namespace bivar;

TEST(Json, ReportSchema)
{
    const VerificationReport r = run_verify("ex48");
    const auto j = to_json(std::vector{r}, Field::rationals());
    EXPECT_EQ(j["version"], 1);
    EXPECT_EQ(j["field"], "q");
    ASSERT_EQ(j["checks"].size(), 1u);
    const auto &c = j["checks"][0];
    for (const char *key : {"check_id", "inputs", "status", "residuals", "steps", "witness", "millis"}) {
        EXPECT_TRUE(c.contains(key)) << key;
    }
    EXPECT_EQ(c["status"], "pass");
    EXPECT_TRUE(c["residuals"].empty());
}

TEST(Json, FailedStepsBecomeResiduals)
{
    VerificationReport r("demo");
    const Ring R(Vars::of({"x"}));
    r.check_equal("x = 1", R.var("x"), R.one());
    const auto j = to_json(r);
    EXPECT_EQ(j["status"], "fail");
    EXPECT_EQ(j["residuals"]["x = 1"], "x - 1");
}

TEST(Json, ErrorsAreReported)
{
    const VerificationReport r = run_report("boom", [](VerificationReport &) { throw Error(Errc::NotDivisible, "nope"); });
    const auto j = to_json(r);
    EXPECT_EQ(j["status"], "error");
    EXPECT_EQ(j["error"]["code"], "NotDivisible");
}

TEST(Json, WordRoundTrip)
{
    const BivariableCert c = example43(FibrationSpec(parse("z^2 + z", Vars::of({"z"})), 2));
    for (const MapWord *w : {&c.alpha, &c.beta}) {
        const MapWord back = word_from_json(to_json(*w), Field::rationals());
        EXPECT_EQ(back.size(), w->size());
        EXPECT_EQ(back.flatten(), w->flatten());
    }
}

TEST(Json, CertificateRoundTrip)
{
    for (const BivariableCert &c : {example43(FibrationSpec(parse("z^2", Vars::of({"z"})), 2)), example66(), linear_bivariable(2, 3)}) {
        const auto j = nlohmann::ordered_json::parse(to_json(c).dump());
        const BivariableCert back = cert_from_json(j);
        EXPECT_EQ(back.omega, c.omega);
        EXPECT_EQ(back.f.f, c.f.f);
    }
}

TEST(Json, CertificateOverExtensionField)
{
    const BivariableCert c = example66(parse_field("ext:t^2-2"));
    const BivariableCert back = cert_from_json(to_json(c));
    EXPECT_EQ(back.omega.field(), c.omega.field());
}

TEST(Json, TamperedCertificateIsRejected)
{
    auto j = to_json(example66());
    j["f"] = "x*a^-1*b^-1";
    EXPECT_THROW(cert_from_json(j), Error);
    auto k = to_json(example66());
    k["omega"] = "a*x";
    EXPECT_THROW(cert_from_json(k), Error);
    auto m = to_json(example66());
    m["alpha"]["word"][0]["type"] = "shear";
    EXPECT_THROW(cert_from_json(m), Error);
}
