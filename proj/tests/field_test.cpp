#include <gtest/gtest.h>

#include "bivar/expr.hpp"
#include "bivar/field.hpp"
#include "support.hpp"

using namespace bivar;

class FieldAxioms : public ::testing::TestWithParam<std::string> {};

TEST_P(FieldAxioms, RandomTriples)
{
    const Field k = parse_field(GetParam());
    gen::Rng rng(17);
    const FieldElem zero(k), one(k, 1L);
    for (int i = 0; i < 200; ++i) {
        const FieldElem a = gen::random_elem(rng, k), b = gen::random_elem(rng, k), c = gen::random_elem(rng, k);
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a + zero, a);
        EXPECT_EQ(a * one, a);
        EXPECT_EQ(a - a, zero);
        if (!a.is_zero()) {
            EXPECT_EQ(a * a.inverse(), one);
            EXPECT_EQ((b / a) * a, b);
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Kinds, FieldAxioms, ::testing::Values("q", "fp:2", "fp:11", "fp:1000003", "ext:t^2-2", "ext:5t^2-1", "ext:t^3-t-1"));

TEST(Field, DivisionByZeroThrows)
{
    for (const auto &spec : {"q", "fp:5", "ext:t^2+1"}) {
        const Field k = parse_field(spec);
        try {
            (void)(FieldElem(k, 1L) / FieldElem(k));
            FAIL() << spec;
        } catch (const Error &e) {
            EXPECT_EQ(e.code(), Errc::DivisionByZero);
        }
    }
}

TEST(Field, RejectsBadSpecs)
{
    for (const auto &spec : {"fp:4", "fp:1", "ext:t^2-1", "ext:t-1", "ext:t^4+1", "r"}) {
        EXPECT_THROW(parse_field(spec), Error) << spec;
    }
}

TEST(Field, NamesRoundTrip)
{
    for (const auto &spec : {"q", "fp:11", "ext:t^2 - 2", "ext:t^3 - t - 1"}) {
        const Field k = parse_field(spec);
        EXPECT_EQ(parse_field(k.name()), k);
    }
    EXPECT_EQ(parse_field("ext:5t^2-1").name(), "ext:t^2 - 1/5");
}

TEST(Field, PrimeReduction)
{
    const Field k = Field::prime(11);
    EXPECT_EQ(FieldElem(k, mpq_class(1, 2)), FieldElem(k, 6L));
    EXPECT_EQ(FieldElem(k, -1L), FieldElem(k, 10L));
    EXPECT_TRUE(FieldElem(k, 22L).is_zero());
}

TEST(Field, ExtensionGenerator)
{
    const Field k = parse_field("ext:5t^2-1");
    const FieldElem t = FieldElem::generator(k);
    EXPECT_EQ(FieldElem(k, 5L) * t * t, FieldElem(k, 1L));
    EXPECT_THROW(FieldElem::generator(Field::rationals()), Error);
}

TEST(Field, SquareRoots)
{
    const auto r = find_sqrt(FieldElem(Field::prime(11), mpq_class(1, 5)));
    ASSERT_TRUE(r);
    EXPECT_EQ(*r * *r, FieldElem(Field::prime(11), mpq_class(1, 5)));
    EXPECT_FALSE(find_sqrt(FieldElem(Field::rationals(), 2L)));
    const Field e = parse_field("ext:5t^2-1");
    const auto s = find_sqrt(FieldElem(e, mpq_class(1, 5)));
    ASSERT_TRUE(s);
    EXPECT_EQ(*s * *s, FieldElem(e, mpq_class(1, 5)));
}

TEST(Field, MixingFieldsThrows)
{
    const FieldElem a(Field::rationals(), 1L), b(Field::prime(7), 1L);
    EXPECT_THROW((void)(a + b), Error);
}
