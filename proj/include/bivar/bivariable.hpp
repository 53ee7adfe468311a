#pragma once

// Bivariables of k[a,b][x,y] with explicit witnesses: a word alpha whose
// flattened map (omega, tau_a) lies in k[a^{±1},b][x,y] and a word beta with
// (omega, tau_b) in k[a,b^{±1}][x,y], such that alpha o beta^{-1} = (x, y + f).

#include <string>
#include <utility>

#include "bivar/a1equiv.hpp"
#include "bivar/error.hpp"
#include "bivar/polymap.hpp"
#include "bivar/report.hpp"
#include "bivar/venereau.hpp"

namespace bivar {

inline Vars bivariable_vars() { return Vars::of({"a", "b", "x", "y"}); }

inline RingDescriptor ring_a_inverted() { return RingDescriptor::laurent({"a"}); }
inline RingDescriptor ring_b_inverted() { return RingDescriptor::laurent({"b"}); }
inline RingDescriptor ring_ab_inverted() { return RingDescriptor::laurent({"a", "b"}); }

struct BivariableCert {
    Poly omega;
    MapWord alpha;
    MapWord beta;
    TransitionFunction f;

    const Poly &tau_a() const { return alpha.flatten()["y"]; }
    const Poly &tau_b() const { return beta.flatten()["y"]; }
};

namespace detail {

// The Jacobian must be c * s^k for a single base variable s.
inline void require_unit(const Poly &jac, const std::string &side, const std::string &var)
{
    bool ok = jac.is_monomial();
    if (ok) {
        const auto &names = jac.vars().names();
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (names[i] != var && jac.leading().first[i] != 0) {
                ok = false;
            }
        }
    }
    if (!ok) {
        throw Error(Errc::JacobianNotUnit, "Jacobian of " + side + " is " + print_canonical(jac));
    }
}

inline void require_in(const PlaneMap &m, const RingDescriptor &ring, const std::string &what)
{
    for (const auto &n : m.moved()) {
        if (!in_ring(m[n], ring)) {
            throw Error(Errc::MembershipError, what + " component " + n + " has terms " + print_canonical(outside_ring(m[n], ring)));
        }
    }
}

} // namespace detail

namespace detail {

// f with alpha o beta^{-1} = (x, y + f(x)), from the composed word.
inline Poly transition_of(const MapWord &alpha, const MapWord &beta)
{
    const PlaneMap t = concat(invert(beta), alpha).flatten();
    const Ring R(alpha.vars(), alpha.field());
    const Poly fx = t["y"] - R.var("y");
    if (t["x"] != R.var("x") || fx.involves("y")) {
        throw Error(Errc::ShapeError, "alpha o beta^-1 = (" + print_canonical(t["x"]) + ", " + print_canonical(t["y"]) + ")");
    }
    return fx;
}

// alpha = (x, y + f) o beta, i.e. alpha o beta^{-1} = (x, y + f).
inline bool glues(const MapWord &alpha, const MapWord &beta, const Poly &f)
{
    const PlaneMap &a = alpha.flatten();
    const PlaneMap &b = beta.flatten();
    return a["x"] == b["x"] && a["y"] == b["y"] + substitute(f, std::map<std::string, Poly>{{"x", b["x"]}});
}

} // namespace detail

// Normalizes both Jacobians to 1 and extracts the transition function. When
// f is already known (as for extensions, where it comes from a short word)
// it is passed as a hint and checked through alpha = (x, y + f) o beta.
inline BivariableCert certify(const Poly &omega, MapWord alpha, MapWord beta, std::optional<Poly> f_hint = std::nullopt)
{
    const Vars vars = bivariable_vars();
    if (alpha.vars() != vars || beta.vars() != vars || omega.vars() != vars) {
        throw Error(Errc::VarTableMismatch, "bivariable data must use the table (a, b, x, y)");
    }
    if (alpha.base() != std::set<std::string>{"a", "b"} || beta.base() != std::set<std::string>{"a", "b"}) {
        throw Error(Errc::InvalidArgument, "words must fix exactly a and b");
    }
    if (!in_ring(omega, RingDescriptor::polynomial())) {
        throw Error(Errc::MembershipError, "omega not in k[a,b][x,y]: " + print_canonical(outside_ring(omega, RingDescriptor::polynomial())));
    }
    if (alpha.flatten()["x"] != omega) {
        throw Error(Errc::ShapeError, "first component of alpha is " + print_canonical(alpha.flatten()["x"]));
    }
    if (beta.flatten()["x"] != omega) {
        throw Error(Errc::ShapeError, "first component of beta is " + print_canonical(beta.flatten()["x"]));
    }
    const Poly ja = jacobian_det(alpha.flatten());
    detail::require_unit(ja, "alpha", "a");
    if (!ja.leading().first.is_one() || !ja.leading().second.is_one()) {
        alpha.then(Scale{"y", ja.unit_inverse()});
        f_hint.reset();
    }
    const Poly jb = jacobian_det(beta.flatten());
    detail::require_unit(jb, "beta", "b");
    if (!jb.leading().first.is_one() || !jb.leading().second.is_one()) {
        beta.then(Scale{"y", jb.unit_inverse()});
        f_hint.reset();
    }
    detail::require_in(alpha.flatten(), ring_a_inverted(), "alpha");
    detail::require_in(invert(alpha).flatten(), ring_a_inverted(), "alpha^-1");
    detail::require_in(beta.flatten(), ring_b_inverted(), "beta");
    detail::require_in(invert(beta).flatten(), ring_b_inverted(), "beta^-1");

    const Poly fx = f_hint ? *f_hint : detail::transition_of(alpha, beta);
    if (fx.vars() != vars || fx.involves("y")) {
        throw Error(Errc::ShapeError, "transition function must be a polynomial in x");
    }
    if (!detail::glues(alpha, beta, fx)) {
        throw Error(Errc::ShapeError, "alpha != (x, y + f) o beta for f = " + print_canonical(fx));
    }
    return BivariableCert{omega, std::move(alpha), std::move(beta), TransitionFunction(embed(fx, transition_vars()))};
}

// Independent re-check of every certificate invariant.
inline VerificationReport verify_cert(const BivariableCert &c, std::string id = "certificate")
{
    return run_report(std::move(id), [&](VerificationReport &r) {
        const Ring R(bivariable_vars(), c.omega.field());
        const PlaneMap &a = c.alpha.flatten();
        const PlaneMap &b = c.beta.flatten();
        r.check("omega polynomial", in_ring(c.omega, RingDescriptor::polynomial()));
        r.check_equal("alpha first component", a["x"], c.omega);
        r.check_equal("beta first component", b["x"], c.omega);
        r.check_equal("Jac(alpha) = 1", jacobian_det(a), R.one());
        r.check_equal("Jac(beta) = 1", jacobian_det(b), R.one());
        r.check("alpha in k[a^-1,b][x,y]", check_membership(a, ring_a_inverted()) && check_membership(invert(c.alpha).flatten(), ring_a_inverted()));
        r.check("beta in k[a,b^-1][x,y]", check_membership(b, ring_b_inverted()) && check_membership(invert(c.beta).flatten(), ring_b_inverted()));
        const Poly f = embed(c.f.f, R.vars);
        r.check_equal("tau_a = tau_b + f(omega)", c.tau_a(), c.tau_b() + substitute(f, std::map<std::string, Poly>{{"x", c.omega}}));
        r.witness_expr("omega", c.omega);
        r.witness_expr("tau_a", c.tau_a());
        r.witness_expr("tau_b", c.tau_b());
        r.witness_expr("f", c.f.f);
    });
}

// omega = a^m x + b^n y + P(a,b), tau_a = y / a^m, tau_b = -x / b^n.
inline BivariableCert linear_bivariable(int m, int n, const Poly &P)
{
    if (m < 1 || n < 1) {
        throw Error(Errc::InvalidArgument, "m and n must be positive");
    }
    if (P.involves("x") || P.involves("y") || !in_ring(P, RingDescriptor::polynomial())) {
        throw Error(Errc::InvalidArgument, "P must lie in k[a,b]");
    }
    const Ring R(bivariable_vars(), P.field());
    const Poly am = R.var("a").pow(m), bn = R.var("b").pow(n);
    const std::set<std::string> base{"a", "b"};
    MapWord alpha(R.vars, R.field, base);
    alpha.then(Scale{"x", am}).then(Triangular{"x", bn * R.var("y") + P}).then(Scale{"y", am.pow(-1)});
    MapWord beta(R.vars, R.field, base);
    beta.then(Scale{"y", bn}).then(Triangular{"y", am * R.var("x") + P}).then(Permute{"x", "y"}).then(Scale{"y", -bn.pow(-1)});
    return certify(am * R.var("x") + bn * R.var("y") + P, std::move(alpha), std::move(beta));
}

inline BivariableCert linear_bivariable(int m, int n)
{
    return linear_bivariable(m, n, Ring(bivariable_vars()).zero());
}

namespace detail {

inline void check_extension_args(const BivariableCert &cert, int m, int n, const Poly &Q)
{
    if (m < 1 || n < 1) {
        throw Error(Errc::PreconditionViolated, "m and n must be positive");
    }
    if (Q.vars() != cert.omega.vars() || Q.field() != cert.omega.field()) {
        throw Error(Errc::VarTableMismatch, "Q must be given over (a, b, x, y) and the certificate's field");
    }
    if (Q.involves("y") || !in_ring(Q, RingDescriptor::polynomial())) {
        throw Error(Errc::InvalidArgument, "Q must be a polynomial in x over k[a,b]");
    }
    const Poly scaled = cert.f.f.times_term([&] {
        Monomial s;
        s[0] = m;
        s[1] = n;
        return s;
    }(), FieldElem(cert.f.f.field(), 1L));
    if (!in_ring(scaled, RingDescriptor::polynomial())) {
        throw Error(Errc::PreconditionViolated, "a^" + std::to_string(m) + " b^" + std::to_string(n) + " f is not polynomial");
    }
}

} // namespace detail

// omega + a Q(a^m tau_a)
inline BivariableCert extend_a(const BivariableCert &cert, int m, int n, const Poly &Q)
{
    detail::check_extension_args(cert, m, n, Q);
    const Ring R(cert.omega.vars(), cert.omega.field());
    const Poly a = R.var("a");
    const Poly am = a.pow(m);
    MapWord alpha = cert.alpha;
    alpha.then(Triangular{"x", a * detail::compose_in(Q, "x", am * R.var("y"))});
    MapWord beta = cert.beta;
    const Poly f = embed(cert.f.f, R.vars);
    const Lemma41Block block = make_lemma41_block(ring_b_inverted(), "x", "y", a, m, Q, am * f);
    beta.then(block);
    const Poly omega = alpha.flatten()["x"];
    // alpha_hat o beta_hat^{-1} = T o (x, y + f) o block^{-1}
    MapWord glue(R.vars, R.field, {"a", "b"});
    glue.then(inverse(ElementaryMap(block))).then(Triangular{"y", f}).then(alpha.word().back());
    return certify(omega, std::move(alpha), std::move(beta), detail::transition_of(glue, MapWord(R.vars, R.field, {"a", "b"})));
}

// omega + b Q(b^n tau_b)
inline BivariableCert extend_b(const BivariableCert &cert, int m, int n, const Poly &Q)
{
    detail::check_extension_args(cert, m, n, Q);
    const Ring R(cert.omega.vars(), cert.omega.field());
    const Poly b = R.var("b");
    const Poly bn = b.pow(n);
    MapWord beta = cert.beta;
    beta.then(Triangular{"x", b * detail::compose_in(Q, "x", bn * R.var("y"))});
    MapWord alpha = cert.alpha;
    const Poly f = embed(cert.f.f, R.vars);
    const Lemma41Block block = make_lemma41_block(ring_a_inverted(), "x", "y", b, n, Q, -(bn * f));
    alpha.then(block);
    const Poly omega = beta.flatten()["x"];
    // alpha_hat o beta_hat^{-1} = block o (x, y + f) o T^{-1}
    MapWord glue(R.vars, R.field, {"a", "b"});
    glue.then(inverse(beta.word().back())).then(Triangular{"y", f}).then(block);
    return certify(omega, std::move(alpha), std::move(beta), detail::transition_of(glue, MapWord(R.vars, R.field, {"a", "b"})));
}

// The bivariable a x + b^2 y + b P(x) obtained from a x + b^2 y.
inline BivariableCert example43(const FibrationSpec &P)
{
    const Ring R(bivariable_vars(), P.field());
    const Poly Qb = P(-R.var("x"));
    return extend_b(linear_bivariable(1, 2, R.zero()), 1, 2, Qb);
}

// omega = a^2 x + (b - a) y with alpha = (omega, y/a^2) and
// beta = (omega, (y - (a + b) x)/b^2).
inline BivariableCert example66(Field field = Field::rationals())
{
    const Ring R(bivariable_vars(), field);
    const Poly a = R.var("a"), b = R.var("b"), x = R.var("x"), y = R.var("y");
    const std::set<std::string> base{"a", "b"};
    MapWord alpha(R.vars, R.field, base);
    alpha.then(Scale{"x", a.pow(2)}).then(Triangular{"x", (b - a) * y}).then(Scale{"y", R.var("a", -2)});
    MapWord beta(R.vars, R.field, base);
    beta.then(Triangular{"y", -((a + b) * x)}).then(Scale{"x", b.pow(2)}).then(Triangular{"x", (b - a) * y}).then(Scale{"y", R.var("b", -2)});
    return certify(a.pow(2) * x + (b - a) * y, std::move(alpha), std::move(beta));
}

struct Lemma44Result {
    BivariableCert cert;
    VerificationReport report;
};

// Extends the certificate of example43 with m = 3, Q = a x / (2c) and checks
// the congruences of the argument, for P of degree 2 with leading
// coefficient c over a field of characteristic != 2.
inline Lemma44Result lemma44_bivariable(const FibrationSpec &P)
{
    if (!char_check(P.field(), {2})) {
        throw Error(Errc::CharTwoField, "characteristic 2 is excluded");
    }
    if (P.degree() != 2) {
        throw Error(Errc::PreconditionViolated, "P must have degree 2");
    }
    const Ring R(bivariable_vars(), P.field());
    const FieldElem c = P.P[2];
    const Poly a = R.var("a"), b = R.var("b"), x = R.var("x");
    const BivariableCert base = example43(P);
    const Poly Q = (FieldElem(R.field, 1L) / (FieldElem(R.field, 2L) * c)) * a * x;
    BivariableCert hat = extend_a(base, 3, 2, Q);

    VerificationReport rep = run_report("lemma44", [&](VerificationReport &r) {
        r.input("P", P.as_poly(Vars::of({"z"})));
        const FieldElem k = FieldElem(R.field, 1L) / (FieldElem(R.field, 2L) * c);
        const Poly delta = k * a.pow(5) * base.tau_a();
        r.check_equal("omega_hat = omega + a^5 tau_a / (2c)", hat.omega, base.omega + delta);
        const RingDescriptor amb = ring_b_inverted();
        r.check("Delta^2 = 0 mod a^4", congruent_mod_power(delta.pow(2), R.zero(), "a", 4, amb),
                print_canonical(truncate_below(delta.pow(2), "a", 4)));
        // closed form x/(ab^2) - P(x/a)/(ab) - (a/b^2) x P(x/a)
        const Poly Pxa = P(x * R.var("a", -1));
        const Poly closed = x * R.var("a", -1) * R.var("b", -2) - (a * b).pow(-1) * Pxa - a * R.var("b", -2) * x * Pxa;
        const Poly f = embed(base.f.f, R.vars);
        const Poly a3 = a.pow(3);
        const Poly lhs = substitute(a3 * closed, std::map<std::string, Poly>{{"x", hat.omega}});
        const Poly rhs = substitute(a3 * f, std::map<std::string, Poly>{{"x", base.omega}});
        r.check("f_hat_b(omega_hat) = f_b(omega) mod a^3", congruent_mod_power(lhs, rhs, "a", 3, amb),
                print_canonical(truncate_below(lhs - rhs, "a", 3)));
        const auto eq = a1_equiv(embed(closed, transition_vars()), hat.f.f);
        r.check("f A1-equivalent to the closed form", eq.has_value());
        r.absorb("cert: ", verify_cert(hat));
        r.witness_expr("omega_hat", hat.omega);
        r.witness_expr("f_hat", hat.f.f);
    });
    return {std::move(hat), std::move(rep)};
}

} // namespace bivar
