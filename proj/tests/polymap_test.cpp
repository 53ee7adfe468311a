#include <gtest/gtest.h>

#include "bivar/expr.hpp"
#include "bivar/polymap.hpp"
#include "support.hpp"

using namespace bivar;

namespace {

const Vars abxyz = Vars::of({"a", "b", "x", "y", "z"});
const Vars abxy = Vars::of({"a", "b", "x", "y"});

Poly P(const std::string &s, Vars v = abxy) { return parse(s, v); }

} // namespace

TEST(PlaneMap, GeneratorsFlatten)
{
    MapWord w(abxy, Field::rationals(), {"a", "b"});
    w.then(Triangular{"y", P("x^2")}).then(Scale{"x", P("a")}).then(Permute{"x", "y"});
    const PlaneMap &m = w.flatten();
    EXPECT_EQ(m["x"], P("y + x^2"));
    EXPECT_EQ(m["y"], P("a*x"));
    EXPECT_EQ(m["a"], P("a"));
    EXPECT_EQ(jacobian_det(m), P("-a"));
}

TEST(PlaneMap, WordOrderAppliesFirstGeneratorFirst)
{
    MapWord w(abxy, Field::rationals(), {"a", "b"});
    w.then(Triangular{"y", P("x")}).then(Triangular{"x", P("y")});
    // (x, y) -> (x, y + x) -> (2x + y, x + y)
    EXPECT_EQ(w.flatten()["x"], P("2*x + y"));
    EXPECT_EQ(w.flatten()["y"], P("x + y"));
}

TEST(PlaneMap, RejectsBadGenerators)
{
    MapWord w(abxy, Field::rationals(), {"a", "b"});
    EXPECT_THROW(w.then(Triangular{"x", P("x*y")}), Error);
    EXPECT_THROW(w.then(Scale{"x", P("x + 1")}), Error);
    EXPECT_THROW(w.then(Triangular{"a", P("x")}), Error);
    EXPECT_THROW(w.then(Permute{"x", "x"}), Error);
    EXPECT_EQ(w.size(), 0u);
}

TEST(PlaneMap, RandomWordsInvert)
{
    gen::Rng rng(23);
    for (int i = 0; i < 50; ++i) {
        const MapWord w = gen::random_word(rng, abxyz, Field::rationals(), 6);
        EXPECT_TRUE(concat(w, invert(w)).flatten().is_identity());
        EXPECT_TRUE(concat(invert(w), w).flatten().is_identity());
        const Poly j = jacobian_det(w.flatten());
        EXPECT_TRUE(j.is_constant() && !j.is_zero()) << print_canonical(j);
    }
}

TEST(PlaneMap, JacobianChainRule)
{
    gen::Rng rng(29);
    for (int i = 0; i < 30; ++i) {
        const MapWord f = gen::random_word(rng, abxyz, Field::rationals(), 4);
        const MapWord g = gen::random_word(rng, abxyz, Field::rationals(), 4);
        const PlaneMap fg = compose(f.flatten(), g.flatten());
        EXPECT_EQ(jacobian_det(fg), g.flatten().pullback(jacobian_det(f.flatten())) * jacobian_det(g.flatten()));
    }
}

TEST(PlaneMap, FlattenAgreesWithEvaluation)
{
    gen::Rng rng(31);
    for (const Field &k : gen::sample_fields()) {
        for (int i = 0; i < 50; ++i) {
            const MapWord u = gen::random_word(rng, abxyz, k, 3);
            const MapWord v = gen::random_word(rng, abxyz, k, 3);
            const auto pt = gen::random_point(rng, abxyz, k);
            const auto direct = gen::evaluate_map(concat(u, v).flatten(), pt);
            const auto stepwise = gen::evaluate_map(v.flatten(), gen::evaluate_map(u.flatten(), pt));
            EXPECT_EQ(direct, stepwise);
        }
    }
}

TEST(PlaneMap, MembershipOfComponents)
{
    MapWord w(abxy, Field::rationals(), {"a", "b"});
    w.then(Scale{"x", P("a^-1")});
    EXPECT_TRUE(check_membership(w.flatten(), RingDescriptor::laurent({"a"})));
    EXPECT_FALSE(check_membership(w.flatten(), RingDescriptor::polynomial()));
}

TEST(Lemma41, KnownInstance)
{
    // m = 1, Q = x, f = x^2: phi(x) = x + a (a y + x^2).
    const auto [phi, psi] = lemma41_build(MapWord(abxy, Field::rationals(), {"a", "b"}), RingDescriptor::polynomial(), "x", "y",
                                          P("a"), 1, P("x"), P("x^2"));
    EXPECT_EQ(phi.flatten()["x"], P("x + a^2*y + a*x^2"));
    EXPECT_TRUE(concat(phi, psi).flatten().is_identity());
}

TEST(Lemma41, RandomInstancesInvert)
{
    gen::Rng rng(41);
    const Poly a = P("a");
    for (int i = 0; i < 20; ++i) {
        const auto inst = gen::random_lemma41(rng, abxy);
        SCOPED_TRACE("m=" + std::to_string(inst.m) + " Q=" + print_canonical(inst.Q) + " f=" + print_canonical(inst.f));
        const auto [phi, psi] = lemma41_build(MapWord(abxy, Field::rationals(), {"a", "b"}), RingDescriptor::polynomial(), "x", "y",
                                              a, inst.m, inst.Q, inst.f);
        EXPECT_TRUE(concat(phi, psi).flatten().is_identity());
        EXPECT_TRUE(concat(psi, phi).flatten().is_identity());
        EXPECT_TRUE(check_membership(phi.flatten(), RingDescriptor::polynomial()));
        const Poly y = P("y");
        EXPECT_EQ(phi.flatten()["x"], P("x") + a * substitute(inst.Q, std::map<std::string, Poly>{{"x", a.pow(inst.m) * y + inst.f}}));
        EXPECT_EQ(jacobian_det(phi.flatten()), P("1"));
    }
}

TEST(Lemma41, RejectsBadArguments)
{
    EXPECT_THROW(make_lemma41_block(RingDescriptor::polynomial(), "x", "y", P("0"), 1, P("x"), P("x")), Error);
    EXPECT_THROW(make_lemma41_block(RingDescriptor::polynomial(), "x", "y", P("a"), 0, P("x"), P("x")), Error);
    EXPECT_THROW(make_lemma41_block(RingDescriptor::polynomial(), "x", "y", P("a"), 1, P("y"), P("x")), Error);
}

TEST(Lemma41, GRecursion)
{
    // g_2 = f(x - a Q(g_1)) = (x - a x^2)^2, reduced mod a^2
    const Lemma41Block b = make_lemma41_block(RingDescriptor::polynomial(), "x", "y", P("a"), 2, P("x"), P("x^2"));
    EXPECT_EQ(b.g, P("x^2 - 2*a*x^3"));
    // with a non-variable divisor the recursion is exact
    const Lemma41Block c = make_lemma41_block(RingDescriptor::polynomial(), "x", "y", P("a*b"), 2, P("x"), P("x^2"));
    EXPECT_EQ(c.g, P("(x - a*b*x^2)^2"));
}
