#pragma once

// Random instances shared by the property tests and the acceptance binary.

#include <map>
#include <random>
#include <string>
#include <vector>

#include "bivar/expr.hpp"
#include "bivar/field.hpp"
#include "bivar/poly.hpp"
#include "bivar/polymap.hpp"

namespace bivar::gen {

using Rng = std::mt19937_64;

inline std::vector<Field> sample_fields()
{
    return {Field::rationals(), Field::prime(7), Field::prime(101), parse_field("ext:t^2-2"), parse_field("ext:t^3-t-1")};
}

inline FieldElem random_elem(Rng &rng, Field k, int span = 5)
{
    std::uniform_int_distribution<long> num(-span, span), den(1, span);
    auto q = [&] {
        if (k.kind() == FieldKind::PrimeField) {
            return mpq_class(num(rng));
        }
        mpq_class r(num(rng), den(rng));
        r.canonicalize();
        return r;
    };
    if (k.kind() != FieldKind::QuotientExtension) {
        return FieldElem(k, q());
    }
    std::vector<mpq_class> c(k.spec().minpoly.size() - 1);
    for (auto &x : c) {
        x = q();
    }
    return FieldElem::from_coeffs(k, c);
}

inline FieldElem random_nonzero(Rng &rng, Field k, int span = 5)
{
    for (;;) {
        FieldElem e = random_elem(rng, k, span);
        if (!e.is_zero()) {
            return e;
        }
    }
}

// Exponents of Laurent variables range over [-lo, hi], the others over [0, hi].
struct Shape {
    int terms = 4;
    int hi = 3;
    int lo = 2;
    int coeff = 2;
    std::set<std::string> laurent{"a", "b"};
};

inline Poly random_poly(Rng &rng, Vars vars, Field k, const Shape &s = {})
{
    std::uniform_int_distribution<int> nterms(0, s.terms);
    std::uniform_int_distribution<long> cd(-s.coeff, s.coeff);
    Poly p(vars, k);
    const int count = nterms(rng);
    for (int t = 0; t < count; ++t) {
        Monomial m;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            const int lo = s.laurent.count(vars.names()[i]) ? -s.lo : 0;
            m[i] = std::uniform_int_distribution<int>(lo, s.hi)(rng);
        }
        p += Poly::monomial(vars, m, FieldElem(k, cd(rng)));
    }
    return p;
}

// A point avoiding zero in every coordinate, so Laurent terms evaluate.
inline std::map<std::string, FieldElem> random_point(Rng &rng, Vars vars, Field k)
{
    std::map<std::string, FieldElem> pt;
    for (const auto &n : vars.names()) {
        pt.emplace(n, random_nonzero(rng, k, 9));
    }
    return pt;
}

// Value of q after pulling back along the map, computed pointwise.
inline FieldElem evaluate_pullback(const Poly &q, const PlaneMap &map, const std::map<std::string, FieldElem> &pt)
{
    std::map<std::string, FieldElem> image = pt;
    for (const auto &n : map.vars().names()) {
        const auto &comps = map.components();
        const auto it = comps.find(n);
        if (it != comps.end()) {
            image[n] = evaluate(it->second, pt);
        }
    }
    return evaluate(q, image);
}

// Random univariate polynomial in x of degree <= deg with coefficients in
// [-c, c], optionally times powers of b.
inline Poly random_in_x(Rng &rng, Vars vars, Field k, int deg, int c = 2, bool base_coeffs = false)
{
    std::uniform_int_distribution<long> cd(-c, c);
    std::uniform_int_distribution<int> be(0, 1);
    Poly p(vars, k);
    const Poly x = Poly::variable(vars, k, "x");
    for (int i = 0; i <= deg; ++i) {
        Poly coeff = Poly::constant(vars, FieldElem(k, cd(rng)));
        if (base_coeffs && be(rng)) {
            coeff = coeff * Poly::variable(vars, k, "b");
        }
        p += coeff * x.pow(i);
    }
    return p;
}

struct Lemma41Instance {
    int m;
    Poly Q;
    Poly f;
};

// m <= 3, deg Q <= 2, deg f <= 3, over Q[a, b] with a as the divisor.
inline Lemma41Instance random_lemma41(Rng &rng, Vars vars)
{
    const Field k = Field::rationals();
    std::uniform_int_distribution<int> md(1, 3), qd(0, 2), fd(0, 3);
    const int m = md(rng);
    return {m, random_in_x(rng, vars, k, qd(rng), 2, true), random_in_x(rng, vars, k, fd(rng), 2, true)};
}

// A random word of triangular, scale and swap generators on (x, y, z) over
// the base (a, b).
inline MapWord random_word(Rng &rng, Vars vars, Field k, int length)
{
    MapWord w(vars, k, {"a", "b"});
    Shape s;
    s.terms = 2;
    s.hi = 2;
    s.laurent = {};
    const std::vector<std::string> moving{"x", "y", "z"};
    std::uniform_int_distribution<int> kind(0, 3), pick(0, 2);
    for (int i = 0; i < length; ++i) {
        const std::string v = moving[pick(rng)];
        switch (kind(rng)) {
        case 0:
        case 1: {
            Poly shift = random_poly(rng, vars, k, s);
            shift = substitute(shift, std::map<std::string, Poly>{{v, Poly::constant(vars, FieldElem(k, 1L))}});
            w.then(Triangular{v, shift});
            break;
        }
        case 2:
            w.then(Scale{v, Poly::constant(vars, random_nonzero(rng, k, 3))});
            break;
        default: {
            const std::string o = moving[(pick(rng) + 1) % 3];
            if (o != v) {
                w.then(Permute{v, o});
            }
        }
        }
    }
    return w;
}

inline std::map<std::string, FieldElem> evaluate_map(const PlaneMap &map, const std::map<std::string, FieldElem> &pt)
{
    std::map<std::string, FieldElem> out = pt;
    for (const auto &[n, c] : map.components()) {
        out[n] = evaluate(c, pt);
    }
    return out;
}

} // namespace bivar::gen
