#include <gtest/gtest.h>

#include "bivar/expr.hpp"
#include "bivar/suite.hpp"
#include "bivar/venereau.hpp"

using namespace bivar;

namespace {

FibrationSpec spec(const std::string &p, int n, Field k = Field::rationals()) { return FibrationSpec(parse(p, Vars::of({"z"}), k), n); }

Poly T(const std::string &s) { return parse(s, transition_vars()); }

} // namespace

TEST(Venereau, PolynomialV)
{
    const Poly v = parse("y + x*(x*z + y^2*u + y*z^2)", venereau_vars());
    EXPECT_EQ(build_v(spec("z^2", 1)), v);
}

TEST(Venereau, SpecRejectsSmallDegree)
{
    EXPECT_THROW(spec("z", 1), Error);
    EXPECT_THROW(spec("3", 1), Error);
    EXPECT_THROW(spec("z^2", 0), Error);
}

TEST(Venereau, SmallestM)
{
    EXPECT_EQ(smallest_m(spec("z^2", 1)), 3);
    EXPECT_EQ(smallest_m(spec("z^2", 2)), 2);
    EXPECT_EQ(smallest_m(spec("z^2", 3)), 1);
    EXPECT_EQ(smallest_m(spec("z^3 + 2*z", 1)), 4);
    EXPECT_THROW(transition_function(spec("z^2", 1), 2), Error);
}

TEST(Venereau, TransitionFunctionsOfTheVenereauFamily)
{
    EXPECT_EQ(transition_function(spec("z^2", 3), 1).f, T(data::f3));
    EXPECT_EQ(transition_function(spec("z^2", 2), 2).f, T(data::f2));
    EXPECT_EQ(transition_function(spec("z^2", 1), 3).f, T(data::f1));
}

TEST(Venereau, TransitionFunctionDenominator)
{
    const TransitionFunction f(T(data::f1));
    EXPECT_EQ(f.m_min, 3);
    EXPECT_EQ(f.n_min, 3);
    EXPECT_EQ(f.P_num, T("a^2*b*x - x^2*b^2 - a*b*x^3 - a^2*x^4"));
    EXPECT_THROW(TransitionFunction(parse("x*y", Vars::of({"a", "b", "x", "y"}))), Error);
}

TEST(Venereau, PhiWordForEveryFibration)
{
    const VerificationReport r = verify_lemma21({});
    EXPECT_TRUE(r.passed()) << (r.first_failure() ? r.first_failure()->name : r.error_message);
    EXPECT_EQ(r.steps.size(), 63u);
}

class Thm12 : public ::testing::TestWithParam<std::tuple<std::string, int>> {};

TEST_P(Thm12, ProofChecksPass)
{
    const auto &[p, n] = GetParam();
    const FibrationSpec s = spec(p, n);
    const VerificationReport r = verify_thm12(s, smallest_m(s));
    EXPECT_TRUE(r.passed()) << (r.first_failure() ? r.first_failure()->residual : r.error_message);
}

INSTANTIATE_TEST_SUITE_P(Family, Thm12,
                         ::testing::Combine(::testing::Values("z^2", "z^2 + z", "z^3 + 2*z"), ::testing::Values(1, 2, 3)));

TEST(Venereau, Thm12OverFiniteField)
{
    const FibrationSpec s = spec("z^2 + z", 2, Field::prime(13));
    EXPECT_TRUE(verify_thm12(s, smallest_m(s)).passed());
}

TEST(Venereau, StableVariableRegression)
{
    const StableVariable sv = stable_variable(spec("z^2", 1));
    EXPECT_EQ(sv.s, 3);
    EXPECT_THROW(stable_variable(spec("z^2", 1), 2), Error);
}

TEST(Venereau, StableAutomorphismAtZeroIsIdentity)
{
    EXPECT_TRUE(stable_automorphism(spec("z^2", 1), -1).flatten().is_identity());
}
