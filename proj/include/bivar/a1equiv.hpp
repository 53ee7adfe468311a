#pragma once

// A^1-bundle equivalence of transition functions: g = lambda f + r_a + r_b
// with r_a in k[a^{±1},b][x] and r_b in k[a,b^{±1}][x].

#include <optional>

#include "bivar/field.hpp"
#include "bivar/poly.hpp"

namespace bivar {

struct A1Witness {
    FieldElem lambda;
    Poly r_a;
    Poly r_b;
};

// Returns the witness when the doubly-negative parts of f and g are
// proportional. Terms with both exponents nonnegative go to r_a; lambda is 1
// when both doubly-negative parts vanish.
inline std::optional<A1Witness> a1_equiv(const Poly &f, const Poly &g)
{
    Poly::check_compatible(f, g);
    const NegativeParts pf = split_negative_parts(f);
    const NegativeParts pg = split_negative_parts(g);
    FieldElem lambda(f.field(), 1L);
    if (pf.doubly_negative.is_zero() != pg.doubly_negative.is_zero()) {
        return std::nullopt;
    }
    if (!pf.doubly_negative.is_zero()) {
        const auto &[mf, cf] = pf.doubly_negative.leading();
        const auto &[mg, cg] = pg.doubly_negative.leading();
        if (mf != mg) {
            return std::nullopt;
        }
        lambda = cg / cf;
        if (pg.doubly_negative != lambda * pf.doubly_negative) {
            return std::nullopt;
        }
    }
    const NegativeParts r = split_negative_parts(g - lambda * f);
    return A1Witness{lambda, r.b_nonneg, r.a_nonneg_b_neg};
}

} // namespace bivar
