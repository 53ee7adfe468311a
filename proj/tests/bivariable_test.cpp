#include <gtest/gtest.h>

#include "bivar/a1equiv.hpp"
#include "bivar/bivariable.hpp"
#include "bivar/expr.hpp"
#include "bivar/suite.hpp"
#include "support.hpp"

using namespace bivar;

namespace {

const Ring R(bivariable_vars());
const Ring T(transition_vars());

Poly B(const std::string &s) { return parse(s, R); }
Poly F(const std::string &s) { return parse(s, T); }

::testing::AssertionResult passes(const VerificationReport &r)
{
    if (r.passed()) {
        return ::testing::AssertionSuccess();
    }
    const Step *s = r.first_failure();
    return ::testing::AssertionFailure() << r.check_id << ": " << (s ? s->name + " residual " + s->residual : r.error_message);
}

} // namespace

TEST(A1Equiv, DecomposesDifference)
{
    const Poly f = F("x*a^-1*b^-1");
    const Poly g = F("2*x*a^-1*b^-1 + a^-3*x^2 + b^-1*x + 5");
    const auto w = a1_equiv(f, g);
    ASSERT_TRUE(w);
    EXPECT_EQ(w->lambda, FieldElem(T.field, 2L));
    EXPECT_EQ(w->r_a, F("a^-3*x^2 + 5"));
    EXPECT_EQ(w->r_b, F("b^-1*x"));
    EXPECT_EQ(Poly::constant(T.vars, w->lambda) * f + w->r_a + w->r_b, g);
}

TEST(A1Equiv, RejectsDifferentDoublyNegativeParts)
{
    EXPECT_FALSE(a1_equiv(F("x*a^-1*b^-1"), F("x^2*a^-1*b^-1")));
    EXPECT_FALSE(a1_equiv(F("x*a^-1*b^-1"), F("x")));
    EXPECT_FALSE(a1_equiv(F(data::f3), F(data::f1)));
}

TEST(A1Equiv, IsAnEquivalenceOnRandomSamples)
{
    gen::Rng rng(53);
    gen::Shape s;
    s.laurent = {"a", "b"};
    const Poly base = F("x*a^-1*b^-2 - x^2*a^-2*b^-1");
    for (int i = 0; i < 40; ++i) {
        // g and h differ from multiples of base by terms with one nonnegative exponent.
        auto perturb = [&](const Poly &p) {
            const NegativeParts np = split_negative_parts(gen::random_poly(rng, T.vars, T.field, s));
            return Poly::constant(T.vars, gen::random_nonzero(rng, T.field, 3)) * p + np.b_nonneg + np.a_nonneg_b_neg;
        };
        const Poly g = perturb(base), h = perturb(base);
        EXPECT_TRUE(a1_equiv(g, g));
        EXPECT_TRUE(a1_equiv(base, g));
        EXPECT_TRUE(a1_equiv(g, base));
        EXPECT_TRUE(a1_equiv(g, h) && a1_equiv(h, g));
        const Poly other = gen::random_poly(rng, T.vars, T.field, s);
        EXPECT_EQ(a1_equiv(g, other).has_value(), a1_equiv(other, g).has_value());
    }
}

TEST(Bivariable, LinearExample)
{
    for (auto [m, n] : {std::pair{1, 1}, {1, 2}, {2, 3}}) {
        const BivariableCert c = linear_bivariable(m, n);
        EXPECT_EQ(c.f.f, T.var("x") * T.var("a", -m) * T.var("b", -n));
        EXPECT_TRUE(passes(verify_cert(c)));
    }
}

TEST(Bivariable, LinearExampleWithConstant)
{
    const BivariableCert c = linear_bivariable(2, 1, B("a*b + 3"));
    EXPECT_EQ(c.f.f, F("(x - a*b - 3)*a^-2*b^-1"));
}

TEST(Bivariable, CertifyRejectsWrongShapes)
{
    MapWord alpha(R.vars, R.field, {"a", "b"});
    alpha.then(Scale{"x", B("a")});
    MapWord beta(R.vars, R.field, {"a", "b"});
    beta.then(Scale{"x", B("b")});
    try {
        (void)certify(B("a*x"), alpha, beta);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), Errc::ShapeError);
    }
    MapWord gamma(R.vars, R.field, {"a", "b"});
    gamma.then(Scale{"x", B("b")}).then(Scale{"y", B("a")});
    try {
        (void)certify(B("b*x"), gamma, gamma);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), Errc::JacobianNotUnit);
    }
}

TEST(Bivariable, ExtendBOfLinear)
{
    const BivariableCert c = extend_b(linear_bivariable(1, 1), 1, 1, B("x^2"));
    EXPECT_EQ(c.omega, B("a*x + b*y + b*x^2"));
    EXPECT_EQ(c.f.f, F("x*a^-1*b^-1"));
    EXPECT_TRUE(passes(verify_cert(c)));
}

TEST(Bivariable, ExtendARequiresPolynomialScaledF)
{
    try {
        (void)extend_a(linear_bivariable(2, 2), 1, 2, B("x"));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), Errc::PreconditionViolated);
    }
}

TEST(Bivariable, Example43)
{
    const BivariableCert c = example43(FibrationSpec(parse("z^2", Vars::of({"z"})), 2));
    EXPECT_EQ(c.omega, B("a*x + b^2*y + b*x^2"));
    EXPECT_EQ(c.f.f, F("x*a^-1*b^-2 - x^2*a^-3*b^-1"));
    EXPECT_TRUE(passes(verify_cert(c)));
}

TEST(Bivariable, Lemma44)
{
    for (const char *p : {"z^2", "z^2 + z", "3*z^2 - z + 1"}) {
        const Lemma44Result r = lemma44_bivariable(FibrationSpec(parse(p, Vars::of({"z"})), 2));
        EXPECT_TRUE(passes(r.report)) << p;
    }
    EXPECT_THROW(lemma44_bivariable(FibrationSpec(parse("z^3", Vars::of({"z"})), 2)), Error);
    EXPECT_THROW(lemma44_bivariable(FibrationSpec(parse("z^2", Vars::of({"z"}), Field::prime(2)), 2)), Error);
}

TEST(Bivariable, Example66)
{
    const BivariableCert c = example66();
    EXPECT_EQ(c.f.f, F("(a + b)*x*a^-2*b^-2"));
    EXPECT_EQ(c.omega, B("a^2*x + b*y - a*y"));
    EXPECT_TRUE(passes(verify_cert(c)));
}

TEST(Bivariable, ExtensionsOnRandomQ)
{
    gen::Rng rng(61);
    for (int i = 0; i < 6; ++i) {
        const Poly Q = gen::random_in_x(rng, R.vars, R.field, 2, 2, true);
        EXPECT_TRUE(passes(verify_cert(extend_a(linear_bivariable(1, 1), 1, 1, Q)))) << print_canonical(Q);
        EXPECT_TRUE(passes(verify_cert(extend_b(linear_bivariable(2, 1), 2, 1, Q)))) << print_canonical(Q);
    }
}
