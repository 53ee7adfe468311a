#include <gtest/gtest.h>

#include "bivar/expr.hpp"
#include "support.hpp"

using namespace bivar;

namespace {

const Vars abxy = Vars::of({"a", "b", "x", "y"});

Errc parse_error(const std::string &s)
{
    try {
        (void)parse(s, abxy);
    } catch (const ParseError &e) {
        return e.code();
    }
    ADD_FAILURE() << "no error for " << s;
    return Errc::InvalidArgument;
}

} // namespace

TEST(Expr, RoundTripRandom)
{
    gen::Rng rng(1);
    for (const Field &k : gen::sample_fields()) {
        for (int i = 0; i < 1000; ++i) {
            const Poly p = gen::random_poly(rng, abxy, k);
            const std::string s = print_canonical(p);
            EXPECT_EQ(parse(s, abxy, k), p) << s;
            EXPECT_EQ(print_canonical(parse(s, abxy, k)), s);
        }
    }
}

TEST(Expr, CanonicalPrinting)
{
    EXPECT_EQ(print_canonical(parse("0", abxy)), "0");
    EXPECT_EQ(print_canonical(parse("x - 1", abxy)), "x - 1");
    EXPECT_EQ(print_canonical(parse("-x^2*a^-1", abxy)), "-x^2*a^-1");
    EXPECT_EQ(print_canonical(parse("1/2*x", abxy)), "1/2*x");
    EXPECT_EQ(print_canonical(parse("1/2 + 1/2", abxy)), "1");
    EXPECT_EQ(print_canonical(parse("4/6*x", abxy)), "2/3*x");
}

TEST(Expr, Grammar)
{
    EXPECT_EQ(parse(" 2 * ( x+1 ) ", abxy), parse("2*x + 2", abxy));
    EXPECT_EQ(parse("-(x - y)", abxy), parse("y - x", abxy));
    EXPECT_EQ(parse("2^-1*x", abxy), parse("1/2*x", abxy));
    EXPECT_EQ(parse("5/4*x^4*a^-1*b^-3", abxy).size(), 1u);
}

TEST(Expr, ExtensionGenerator)
{
    const Field k = parse_field("ext:t^2-2");
    const Poly p = parse("(t*x)^2", abxy, k);
    EXPECT_EQ(p, parse("2*x^2", abxy, k));
    EXPECT_EQ(parse(print_canonical(parse("t*x + 1/3*t", abxy, k)), abxy, k), parse("t*(x + 1/3)", abxy, k));
}

TEST(Expr, Errors)
{
    EXPECT_EQ(parse_error("x +"), Errc::SyntaxError);
    EXPECT_EQ(parse_error("(x"), Errc::SyntaxError);
    EXPECT_EQ(parse_error("w"), Errc::UnknownVariable);
    EXPECT_EQ(parse_error("x^-1"), Errc::NegativeExponentNotAllowed);
    EXPECT_EQ(parse_error("(x+1)^-1"), Errc::NegativeExponentNotAllowed);
    EXPECT_EQ(parse_error("(a*b)^-2"), Errc::NegativeExponentNotAllowed);
    EXPECT_EQ(parse_error("1/0"), Errc::DivisionByZero);
    EXPECT_EQ(parse_error("x/2"), Errc::SyntaxError);
    EXPECT_EQ(parse_error("2(x + 1)"), Errc::SyntaxError);
    EXPECT_EQ(parse_error("x^99999999999"), Errc::ExponentOverflow);
}

TEST(Expr, ErrorPosition)
{
    try {
        (void)parse("x + * y", abxy);
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.position(), 4u);
    }
}

TEST(Expr, LaurentOptIn)
{
    EXPECT_EQ(parse("x^-1", abxy, Field::rationals(), ParseOptions::allowing({"x"})).pow(-1), parse("x", abxy));
}
