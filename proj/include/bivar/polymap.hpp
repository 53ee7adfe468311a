#pragma once

// Polynomial maps fixing a set of base variables, kept as words of
// elementary generators so that inverses are always exact.
//
// Maps act on points: a word [g1, ..., gk] is the composite gk o ... o g1,
// i.e. g1 is applied first. A polynomial Q is pulled back by a map w as Q o w.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bivar/error.hpp"
#include "bivar/expr.hpp"
#include "bivar/poly.hpp"

namespace bivar {

using Components = std::map<std::string, Poly>;

// Substitutes the given images into p. Variables occurring in p with negative
// exponents whose images are not units are cleared first and divided out
// exactly afterwards; NotDivisible means the result is not a Laurent
// polynomial.
inline Poly apply_map(const Poly &p, const Components &images, Vars target)
{
    const auto &names = p.vars().names();
    Monomial shift;
    bool any = false;
    for (std::size_t i = 0; i < names.size(); ++i) {
        const Exponent lo = p.min_exponent(i);
        if (lo >= 0) {
            continue;
        }
        auto it = images.find(names[i]);
        if (it != images.end() && !it->second.is_monomial()) {
            shift[i] = -lo;
            any = true;
        }
    }
    if (!any) {
        return substitute(p, images, target);
    }
    const Poly num = substitute(p.times_term(shift, FieldElem(p.field(), 1L)), images, target);
    Poly den = Poly::constant(target, FieldElem(p.field(), 1L));
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (shift[i] > 0) {
            den = den * images.at(names[i]).pow(shift[i]);
        }
    }
    return divide_exact(num, den);
}

// Explicit components of a map; base variables are kept as identity entries.
class PlaneMap {
public:
    PlaneMap() = default;

    PlaneMap(Vars vars, Field field, std::set<std::string> base) : vars_(vars), field_(field), base_(std::move(base))
    {
        for (const auto &n : vars.names()) {
            comps_.emplace(n, Poly::variable(vars, field, n));
        }
    }

    PlaneMap(Vars vars, Field field, std::set<std::string> base, const Components &moved)
        : PlaneMap(vars, field, std::move(base))
    {
        for (const auto &[k, v] : moved) {
            vars.require(k);
            comps_.at(k) = v;
        }
    }

    Vars vars() const noexcept { return vars_; }
    Field field() const noexcept { return field_; }
    const std::set<std::string> &base() const noexcept { return base_; }
    const Components &components() const noexcept { return comps_; }
    const Poly &operator[](const std::string &v) const { return comps_.at(v); }

    std::vector<std::string> moved() const
    {
        std::vector<std::string> out;
        for (const auto &n : vars_.names()) {
            if (!base_.count(n)) {
                out.push_back(n);
            }
        }
        return out;
    }

    // Q o this.
    Poly pullback(const Poly &q) const { return apply_map(q, comps_, vars_); }

    bool is_identity() const
    {
        for (const auto &[k, v] : comps_) {
            if (v != Poly::variable(vars_, field_, k)) {
                return false;
            }
        }
        return true;
    }

    friend bool operator==(const PlaneMap &l, const PlaneMap &r) { return l.vars_ == r.vars_ && l.comps_ == r.comps_; }
    friend bool operator!=(const PlaneMap &l, const PlaneMap &r) { return !(l == r); }

private:
    friend PlaneMap compose(const PlaneMap &outer, const PlaneMap &inner);

    Vars vars_;
    Field field_;
    std::set<std::string> base_;
    Components comps_;
};

// outer o inner
inline PlaneMap compose(const PlaneMap &outer, const PlaneMap &inner)
{
    if (outer.vars_ != inner.vars_) {
        throw Error(Errc::VarTableMismatch, "composing maps over different tables");
    }
    PlaneMap out = inner;
    for (const auto &n : outer.moved()) {
        out.comps_.at(n) = inner.pullback(outer[n]);
    }
    return out;
}

// Determinant of a square matrix of polynomials by cofactor expansion.
inline Poly determinant(const std::vector<std::vector<Poly>> &m, const Ring &ring)
{
    const std::size_t n = m.size();
    if (n == 0) {
        return ring.one();
    }
    if (n == 1) {
        return m[0][0];
    }
    if (n == 2) {
        return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    }
    Poly det = ring.zero();
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) {
            continue;
        }
        std::vector<std::vector<Poly>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Poly> row;
            for (std::size_t k = 0; k < n; ++k) {
                if (k != j) {
                    row.push_back(m[i][k]);
                }
            }
            minor.push_back(std::move(row));
        }
        const Poly term = m[0][j] * determinant(minor, ring);
        det = j % 2 == 0 ? det + term : det - term;
    }
    return det;
}

// Jacobian determinant with respect to the moved variables.
inline Poly jacobian_det(const PlaneMap &p)
{
    const auto moved = p.moved();
    std::vector<std::vector<Poly>> m;
    for (const auto &row : moved) {
        std::vector<Poly> r;
        for (const auto &col : moved) {
            r.push_back(partial_derivative(p[row], col));
        }
        m.push_back(std::move(r));
    }
    return determinant(m, Ring(p.vars(), p.field()));
}

inline bool check_membership(const PlaneMap &p, const RingDescriptor &ring)
{
    for (const auto &n : p.moved()) {
        if (!in_ring(p[n], ring)) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Generators

// var -> var + shift, shift free of var.
struct Triangular {
    std::string var;
    Poly shift;
};

// var -> unit * var, unit a single term free of var.
struct Scale {
    std::string var;
    Poly unit;
};

struct Permute {
    std::string first;
    std::string second;
};

// The automorphism pair of the constructive variable lemma on the variables
// (x, y) over a base ring containing a_elt:
//   forward:  x -> x + a Q(a^m y + f(x)),  y -> y + (f(x) - g(X)) / a^m
//   inverse:  x -> x - a Q(a^m y + g(x)),  y -> y + (g(x) - f(X)) / a^m
// where X is the new x and g = g_m from g_1 = f, g_i = f(x - a Q(g_{i-1})).
// Q, f, g are polynomials in x with coefficients in the base.
struct Lemma41Block {
    std::string x;
    std::string y;
    Poly a_elt;
    int m = 1;
    Poly Q;
    Poly f;
    Poly g;
    bool inverse = false;
};

using ElementaryMap = std::variant<Triangular, Scale, Permute, Lemma41Block>;

namespace detail {

inline Poly compose_in(const Poly &p, const std::string &var, const Poly &arg)
{
    return substitute(p, std::map<std::string, Poly>{{var, arg}}, p.vars());
}

inline Poly lemma41_quotient(const Poly &num, const Poly &a_elt, int m)
{
    return divide_exact(num, a_elt.pow(m));
}

} // namespace detail

inline std::vector<std::string> moved_vars(const ElementaryMap &g)
{
    return std::visit(
        [](const auto &e) -> std::vector<std::string> {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, Triangular> || std::is_same_v<T, Scale>) {
                return {e.var};
            } else if constexpr (std::is_same_v<T, Permute>) {
                return {e.first, e.second};
            } else {
                return {e.x, e.y};
            }
        },
        g);
}

// Components of a generator as polynomials in the table's variables.
inline Components generator_components(const ElementaryMap &g)
{
    return std::visit(
        [](const auto &e) -> Components {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, Triangular>) {
                const Poly v = Poly::variable(e.shift.vars(), e.shift.field(), e.var);
                return {{e.var, v + e.shift}};
            } else if constexpr (std::is_same_v<T, Scale>) {
                const Poly v = Poly::variable(e.unit.vars(), e.unit.field(), e.var);
                return {{e.var, e.unit * v}};
            } else if constexpr (std::is_same_v<T, Permute>) {
                throw Error(Errc::InvalidArgument, "permutation components need a table");
            } else {
                const Vars vars = e.a_elt.vars();
                const Field field = e.a_elt.field();
                const Poly x = Poly::variable(vars, field, e.x);
                const Poly y = Poly::variable(vars, field, e.y);
                const Poly &src = e.inverse ? e.g : e.f;
                const Poly &dst = e.inverse ? e.f : e.g;
                const Poly am = e.a_elt.pow(e.m);
                const Poly shift = e.a_elt * detail::compose_in(e.Q, e.x, am * y + src);
                const Poly X = e.inverse ? x - shift : x + shift;
                const Poly Y = y + detail::lemma41_quotient(src - detail::compose_in(dst, e.x, X), e.a_elt, e.m);
                return {{e.x, X}, {e.y, Y}};
            }
        },
        g);
}

inline Components generator_components(const ElementaryMap &g, Vars vars, Field field)
{
    if (const auto *p = std::get_if<Permute>(&g)) {
        return {{p->first, Poly::variable(vars, field, p->second)}, {p->second, Poly::variable(vars, field, p->first)}};
    }
    return generator_components(g);
}

inline ElementaryMap inverse(const ElementaryMap &g)
{
    return std::visit(
        [](const auto &e) -> ElementaryMap {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, Triangular>) {
                return Triangular{e.var, -e.shift};
            } else if constexpr (std::is_same_v<T, Scale>) {
                return Scale{e.var, e.unit.unit_inverse()};
            } else if constexpr (std::is_same_v<T, Permute>) {
                return e;
            } else {
                Lemma41Block b = e;
                b.inverse = !b.inverse;
                return b;
            }
        },
        g);
}

namespace detail {

// Components of the block applied after the map `at`, evaluated through the
// defining formulas so that a^m y + f(x) is formed before Q is applied.
// Substituting the expanded block components instead gives the same result
// with intermediate sizes of order deg(g) deg(Q).
inline Components apply_lemma41(const Lemma41Block &e, const Components &at, Vars vars)
{
    auto in = [&](const Poly &p) { return apply_map(p, at, vars); };
    auto with_x = [&](const Poly &p, const Poly &x) {
        Components c = at;
        c.at(e.x) = x;
        return apply_map(p, c, vars);
    };
    const Poly &src = e.inverse ? e.g : e.f;
    const Poly &dst = e.inverse ? e.f : e.g;
    const Poly am = in(e.a_elt.pow(e.m));
    const Poly src_at = in(src);
    const Poly shift = in(e.a_elt) * with_x(e.Q, am * at.at(e.y) + src_at);
    const Poly X = e.inverse ? at.at(e.x) - shift : at.at(e.x) + shift;
    const Poly Y = at.at(e.y) + divide_exact(src_at - with_x(dst, X), am);
    return {{e.x, X}, {e.y, Y}};
}

} // namespace detail

// Builds a Lemma41Block, computing g and checking that both interior
// quotients by a^m are exact and lie in `base` (extended by x and y).
inline Lemma41Block make_lemma41_block(const RingDescriptor &base, std::string x, std::string y, const Poly &a_elt, int m,
                                       const Poly &Q, const Poly &f)
{
    if (m < 1) {
        throw Error(Errc::InvalidArgument, "block exponent must be positive");
    }
    if (a_elt.is_zero()) {
        throw Error(Errc::InvalidArgument, "a must be nonzero");
    }
    Poly::check_compatible(a_elt, Q);
    Poly::check_compatible(a_elt, f);
    if (Q.involves(y) || f.involves(y) || a_elt.involves(x) || a_elt.involves(y)) {
        throw Error(Errc::InvalidArgument, "Q and f must be polynomials in " + x + " over the base");
    }
    const Poly xv = Poly::variable(a_elt.vars(), a_elt.field(), x);
    // Only g mod a^m matters. When a is a variable the recursion is reduced
    // mod a^m at every step; otherwise the degree of g_m grows like
    // (deg f deg Q)^(m-1).
    std::optional<std::string> a_var;
    if (a_elt.is_monomial() && a_elt.leading().first.total_degree() == 1) {
        for (std::size_t i = 0; i < a_elt.vars().size(); ++i) {
            if (a_elt.leading().first[i] == 1) {
                a_var = a_elt.vars().names()[i];
            }
        }
    }
    auto reduce = [&](const Poly &p) { return a_var ? truncate_below(p, *a_var, m) : p; };
    Poly g = reduce(f);
    for (int i = 2; i <= m; ++i) {
        g = reduce(detail::compose_in(f, x, xv - a_elt * detail::compose_in(Q, x, g)));
    }
    Lemma41Block b{std::move(x), std::move(y), a_elt, m, Q, f, std::move(g), false};
    for (bool inv : {false, true}) {
        b.inverse = inv;
        const Components c = generator_components(b);
        for (const auto &[k, v] : c) {
            if (!in_ring(v, base)) {
                throw Error(Errc::NotDivisible, "component " + k + " leaves the base ring: " + print_canonical(outside_ring(v, base)));
            }
        }
    }
    b.inverse = false;
    return b;
}

// ---------------------------------------------------------------------------
// Words

class MapWord {
public:
    MapWord() = default;

    MapWord(Vars vars, Field field, std::set<std::string> base)
        : vars_(vars), field_(field), base_(std::move(base)), flat_(vars, field, base_)
    {
        for (const auto &b : base_) {
            vars.require(b);
        }
    }

    Vars vars() const noexcept { return vars_; }
    Field field() const noexcept { return field_; }
    const std::set<std::string> &base() const noexcept { return base_; }
    const std::vector<ElementaryMap> &word() const noexcept { return word_; }
    std::size_t size() const noexcept { return word_.size(); }

    // Appends g, to be applied after the current word. The explicit
    // components are maintained eagerly.
    MapWord &then(ElementaryMap g)
    {
        for (const auto &v : moved_vars(g)) {
            vars_.require(v);
            if (base_.count(v)) {
                throw Error(Errc::InvalidArgument, "generator moves base variable " + v);
            }
        }
        validate(g);
        Components next = flat_.components();
        if (const auto *b = std::get_if<Lemma41Block>(&g)) {
            for (auto &[k, v] : detail::apply_lemma41(*b, flat_.components(), vars_)) {
                next.at(k) = std::move(v);
            }
        } else {
            for (const auto &[k, v] : generator_components(g, vars_, field_)) {
                next.at(k) = apply_map(v, flat_.components(), vars_);
            }
        }
        flat_ = PlaneMap(vars_, field_, base_, next);
        word_.push_back(std::move(g));
        return *this;
    }

    MapWord &then(const MapWord &w)
    {
        check_same(w);
        for (const auto &g : w.word_) {
            then(g);
        }
        return *this;
    }

    const PlaneMap &flatten() const noexcept { return flat_; }

    friend MapWord concat(MapWord first, const MapWord &second) { return std::move(first.then(second)); }

    friend MapWord invert(const MapWord &w)
    {
        MapWord out(w.vars_, w.field_, w.base_);
        for (auto it = w.word_.rbegin(); it != w.word_.rend(); ++it) {
            out.then(inverse(*it));
        }
        return out;
    }

private:
    void check_same(const MapWord &w) const
    {
        if (w.vars_ != vars_) {
            throw Error(Errc::VarTableMismatch, "words over different tables");
        }
        if (w.field_ != field_) {
            throw Error(Errc::FieldMismatch, "words over different fields");
        }
    }

    void validate(const ElementaryMap &g) const
    {
        auto same = [&](const Poly &p) {
            if (p.vars() != vars_) {
                throw Error(Errc::VarTableMismatch, "generator payload uses a different table");
            }
            if (p.field() != field_) {
                throw Error(Errc::FieldMismatch, "generator payload over a different field");
            }
        };
        if (const auto *t = std::get_if<Triangular>(&g)) {
            same(t->shift);
            if (t->shift.involves(t->var)) {
                throw Error(Errc::InvalidArgument, "triangular shift involves its own variable " + t->var);
            }
        } else if (const auto *s = std::get_if<Scale>(&g)) {
            same(s->unit);
            if (!s->unit.is_monomial() || s->unit.involves(s->var)) {
                throw Error(Errc::InvalidArgument, "scale factor must be a single term free of " + s->var);
            }
        } else if (const auto *p = std::get_if<Permute>(&g)) {
            if (p->first == p->second) {
                throw Error(Errc::InvalidArgument, "permutation of a variable with itself");
            }
        } else {
            const auto &b = std::get<Lemma41Block>(g);
            same(b.a_elt);
        }
    }

    Vars vars_;
    Field field_;
    std::set<std::string> base_;
    std::vector<ElementaryMap> word_;
    PlaneMap flat_;
};

inline PlaneMap flatten(const MapWord &w) { return w.flatten(); }

// The two words of the constructive variable lemma on (x, y): phi with
// phi(x) = x + a Q(a^m y + f(x)) and its inverse psi.
inline std::pair<MapWord, MapWord> lemma41_build(const MapWord &shape, const RingDescriptor &base, const std::string &x,
                                                 const std::string &y, const Poly &a_elt, int m, const Poly &Q,
                                                 const Poly &f)
{
    const Lemma41Block b = make_lemma41_block(base, x, y, a_elt, m, Q, f);
    MapWord phi(shape.vars(), shape.field(), shape.base());
    MapWord psi = phi;
    phi.then(b);
    psi.then(inverse(b));
    return {std::move(phi), std::move(psi)};
}

} // namespace bivar
