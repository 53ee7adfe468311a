#pragma once

// The X_f bundle calculus: congruence equivalence of transition functions,
// the small-denominator classifier, the hypersurface model a^m u - b^n v = P
// and the blow-up chart computation.

#include <cstddef>
#include <future>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bivar/a1equiv.hpp"
#include "bivar/bivariable.hpp"
#include "bivar/error.hpp"
#include "bivar/polymap.hpp"
#include "bivar/report.hpp"
#include "bivar/venereau.hpp"

namespace bivar {

struct BundleSpec {
    TransitionFunction f;
};

inline Vars lemma62_vars() { return Vars::of({"a", "b", "x", "u", "v"}); }
inline Vars hypersurface_vars() { return Vars::of({"a", "b", "x", "y", "u", "v"}); }

namespace detail {

inline void require_x_poly(const Poly &p, const RingDescriptor &ring, const std::string &what)
{
    for (std::size_t i = 0; i < p.vars().size(); ++i) {
        const auto &n = p.vars().names()[i];
        if (n != "a" && n != "b" && n != "x" && p.involves(i)) {
            throw Error(Errc::UnexpectedVariable, what + " involves " + n);
        }
    }
    if (!in_ring(p, ring)) {
        throw Error(Errc::PreconditionViolated, what + " has terms " + print_canonical(outside_ring(p, ring)));
    }
}

// P = a^m b^n f, required to be polynomial.
inline Poly numerator(const TransitionFunction &f, int m, int n)
{
    if (m < 0 || n < 0) {
        throw Error(Errc::InvalidArgument, "m and n must be nonnegative");
    }
    const Vars vars = f.f.vars();
    const Ring R(vars, f.f.field());
    const Poly P = R.var("a").pow(m) * R.var("b").pow(n) * f.f;
    if (!in_ring(P, RingDescriptor::polynomial())) {
        throw Error(Errc::PreconditionViolated, "a^" + std::to_string(m) + " b^" + std::to_string(n) + " f is not a polynomial: "
                                                    + print_canonical(outside_ring(P, RingDescriptor::polynomial())));
    }
    return P;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Congruence equivalence

// Checks g_b(x + a Q(f_b(x))) = f_b(x) mod a^m and, on success, the witness
// identity alpha o (x, y + g_b/a^m) o gamma = (x, y + f_b/a^m) with
// alpha = (x - a Q(a^m y), y) in G_a and
// gamma = (v, y + (f_b(x) - g_b(v))/a^m), v = x + a Q(a^m y + f_b(x)), in G_b.
inline VerificationReport prop45_check(const Poly &f_b, const Poly &g_b, int m, const Poly &Q, std::string id = "prop45")
{
    return run_report(std::move(id), [&](VerificationReport &r) {
        r.input("f_b", f_b);
        r.input("g_b", g_b);
        r.input("m", std::to_string(m));
        r.input("Q", Q);
        if (m < 1) {
            throw Error(Errc::InvalidArgument, "m must be positive");
        }
        Poly::check_compatible(f_b, g_b);
        Poly::check_compatible(f_b, Q);
        detail::require_x_poly(f_b, ring_b_inverted(), "f_b");
        detail::require_x_poly(g_b, ring_b_inverted(), "g_b");
        detail::require_x_poly(Q, RingDescriptor::polynomial(), "Q");

        const Vars vars = bivariable_vars();
        const Ring R(vars, f_b.field());
        const Poly f = embed(f_b, vars), g = embed(g_b, vars), q = embed(Q, vars);
        const Poly x = R.var("x"), y = R.var("y"), a = R.var("a");
        const Poly am = a.pow(m);

        const Poly diff = detail::compose_in(g, "x", x + a * detail::compose_in(q, "x", f)) - f;
        if (!r.check("g_b(x + a Q(f_b)) = f_b mod a^" + std::to_string(m),
                     congruent_mod_power(diff, R.zero(), "a", m, ring_b_inverted()), print_canonical(truncate_below(diff, "a", m)))) {
            return;
        }

        const std::set<std::string> base{"a", "b"};
        const Poly v = x + a * detail::compose_in(q, "x", am * y + f);
        const PlaneMap alpha(vars, R.field, base, {{"x", x - a * detail::compose_in(q, "x", am * y)}, {"y", y}});
        const PlaneMap gamma(vars, R.field, base, {{"x", v}, {"y", y + divide_exact(f - detail::compose_in(g, "x", v), am)}});
        const PlaneMap tg(vars, R.field, base, {{"x", x}, {"y", y + g * a.pow(-m)}});
        r.check("alpha in G_a", check_membership(alpha, ring_a_inverted()) && jacobian_det(alpha) == R.one());
        r.check("gamma in G_b", check_membership(gamma, ring_b_inverted()), print_canonical(outside_ring(gamma["y"], ring_b_inverted())));
        r.check_equal("Jacobian of gamma", jacobian_det(gamma), R.one());

        const PlaneMap lhs = compose(alpha, compose(tg, gamma));
        r.check_equal("alpha o (x, y + g) o gamma, x", lhs["x"], x);
        r.check_equal("alpha o (x, y + g) o gamma, y", lhs["y"], y + f * a.pow(-m));

        // the same identity through the word of generators
        MapWord w(vars, R.field, base);
        w.then(Lemma41Block{"x", "y", a, m, q, f, g, false});
        w.then(Triangular{"y", g * a.pow(-m)});
        w.then(Triangular{"x", -(a * detail::compose_in(q, "x", am * y))});
        r.check("witness word flattens to (x, y + f)", w.flatten() == PlaneMap(vars, R.field, base, {{"x", x}, {"y", y + f * a.pow(-m)}}));

        r.witness_expr("alpha_x", alpha["x"]);
        r.witness_expr("gamma_x", gamma["x"]);
        r.witness_expr("gamma_y", gamma["y"]);
        r.witness.emplace_back("conclusion", "rho_{" + print_canonical(f * a.pow(-m)) + "} ~ rho_{" + print_canonical(g * a.pow(-m)) + "}");
    });
}

struct Prop45Search {
    std::optional<Poly> Q;
    std::size_t candidates = 0;
    std::vector<std::size_t> survivors; // after the congruence mod a, a^2, ...
};

namespace detail {

inline Poly candidate(const Vars &vars, const std::vector<FieldElem> &pool, std::size_t index, int deg)
{
    Poly q(vars, pool.front().field());
    for (int j = 0; j <= deg; ++j) {
        q = q + Poly::constant(vars, pool[index % pool.size()]) * Poly::variable(vars, q.field(), "x", j);
        index /= pool.size();
    }
    return q;
}

} // namespace detail

// Enumerates Q = c_0 + c_1 x + ... + c_d x^d with c_j in the pool, c_0 the
// fastest-varying digit. Candidates are filtered by the congruence mod a,
// then mod a^2, ..., mod a^m; the survivors are checked in full and the one
// with the smallest index wins.
inline Prop45Search prop45_search(const Poly &f_b, const Poly &g_b, int m, int deg_bound, const std::vector<FieldElem> &pool,
                                  bool parallel = false)
{
    if (m < 1 || deg_bound < 0) {
        throw Error(Errc::InvalidArgument, "need m >= 1 and deg >= 0");
    }
    Prop45Search out;
    if (pool.empty()) {
        return out;
    }
    Poly::check_compatible(f_b, g_b);
    detail::require_x_poly(f_b, ring_b_inverted(), "f_b");
    detail::require_x_poly(g_b, ring_b_inverted(), "g_b");
    const Vars vars = f_b.vars();
    const Ring R(vars, f_b.field());
    const Poly x = R.var("x"), a = R.var("a");
    out.candidates = 1;
    for (int j = 0; j <= deg_bound; ++j) {
        out.candidates *= pool.size();
    }

    struct Live {
        std::size_t index;
        Poly diff;
    };
    std::vector<Live> live;
    for (std::size_t i = 0; i < out.candidates; ++i) {
        const Poly q = detail::candidate(vars, pool, i, deg_bound);
        live.push_back({i, detail::compose_in(g_b, "x", x + a * detail::compose_in(q, "x", f_b)) - f_b});
    }
    for (int k = 1; k <= m; ++k) {
        std::vector<Live> next;
        for (auto &c : live) {
            if (congruent_mod_power(c.diff, R.zero(), "a", k, ring_b_inverted())) {
                next.push_back(std::move(c));
            }
        }
        live = std::move(next);
        out.survivors.push_back(live.size());
    }

    auto full = [&](std::size_t i) { return prop45_check(f_b, g_b, m, detail::candidate(vars, pool, i, deg_bound)).passed(); };
    if (parallel) {
        std::vector<std::future<bool>> jobs;
        for (const auto &c : live) {
            jobs.push_back(std::async(std::launch::async, full, c.index));
        }
        for (std::size_t j = 0; j < live.size(); ++j) {
            if (jobs[j].get() && !out.Q) {
                out.Q = detail::candidate(vars, pool, live[j].index, deg_bound);
            }
        }
    } else {
        for (const auto &c : live) {
            if (full(c.index)) {
                out.Q = detail::candidate(vars, pool, c.index, deg_bound);
                break;
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// The hypersurface a^m u - b^n v = P

inline Poly hypersurface_equation(const Poly &P, int m, int n)
{
    const Vars vars = lemma62_vars();
    const Ring R(vars, P.field());
    return R.var("a").pow(m) * R.var("u") - R.var("b").pow(n) * R.var("v") - embed(P, vars);
}

// Word W over (a, b, x, u, v) fixing a, b with W^*(a^m u - b^n v - P) = x.
inline MapWord lemma62_variable(const Poly &P, int m, int n)
{
    if (m < 1 || n < 1) {
        throw Error(Errc::InvalidArgument, "m and n must be positive");
    }
    detail::require_x_poly(P, RingDescriptor::polynomial(), "P");
    const Vars vars = lemma62_vars();
    const Ring R(vars, P.field());
    const Poly x = R.var("x"), u = R.var("u"), a = R.var("a"), b = R.var("b");
    const Poly p = embed(P, vars);

    const std::vector<FieldElem> p00 = univariate_coefficients(set_vars_to_zero(p, {"a", "b"}), "x");
    if (p00.size() != 2) {
        throw Error(Errc::DegreeNotOne, "P(0,0,x) has degree " + std::to_string(static_cast<long>(p00.size()) - 1));
    }
    const FieldElem mu = p00[0], xi = p00[1];

    // V with V_x = Q: first undo the normalisation x -> (x - mu)/xi, u -> -u
    MapWord V(vars, R.field, {"a", "b"});
    V.then(Scale{"x", R.c(xi)});
    if (!mu.is_zero()) {
        V.then(Triangular{"x", R.c(mu)});
    }
    V.then(Scale{"u", R.c(-1)});

    // P' = -(Q o normalisation) - a^m u - b^n v with P'(0,0,x) = x
    const Poly pn = detail::compose_in(p, "x", R.c(xi.inverse()) * (x - R.c(mu)));
    const Poly rest = pn - x;
    std::vector<Poly::Term> t1, t2;
    for (const auto &t : rest.terms()) {
        (t.first[vars.require("a")] >= 1 ? t1 : t2).push_back(t);
    }
    const Poly P1 = divide_exact(Poly::from_terms(vars, R.field, std::move(t1)), a);
    const Poly P2 = divide_exact(Poly::from_terms(vars, R.field, std::move(t2)), b);

    // g1 with g1_x = x + a^m u + a P1, a variable in (x, u) over k[a, b, v]
    auto block = [&](const std::string &y, const Poly &s, int k, const Poly &f) {
        MapWord w(vars, R.field, {"a", "b"});
        if (k == 1) {
            if (!f.is_zero()) {
                w.then(Triangular{y, f});
            }
            w.then(Triangular{"x", s * R.var(y)});
        } else {
            w.then(make_lemma41_block(RingDescriptor::polynomial(), "x", y, s, k - 1, x, f));
        }
        return w;
    };
    const MapWord g1 = block("u", a, m, P1);
    const Poly P3 = detail::compose_in(P2, "x", invert(g1).flatten()["x"]);
    const MapWord g2 = block("v", b, n, P3);

    V.then(g1).then(g2).then(Scale{"x", R.c(-1)});
    const Poly Q = hypersurface_equation(P, m, n);
    if (V.flatten()["x"] != Q) {
        throw Error(Errc::ShapeError, "straightening word has first component " + print_canonical(V.flatten()["x"]));
    }
    MapWord W = invert(V);
    if (W.flatten().pullback(Q) != x) {
        throw Error(Errc::ShapeError, "straightening word does not straighten the equation");
    }
    return W;
}

// Re-checks a straightening word: constant nonzero Jacobian and
// W^*(a^m u - b^n v - P) = x.
inline bool verify_lemma62_word(const MapWord &W, const Poly &P, int m, int n)
{
    const Ring R(lemma62_vars(), P.field());
    const Poly j = jacobian_det(W.flatten());
    return !j.is_zero() && j.is_monomial() && j.leading().first == Monomial{}
           && W.flatten().pullback(hypersurface_equation(P, m, n)) == R.var("x");
}

// Chart maps of X_f into a^m u - b^n v = P:
//   phi((a,b),(x,y)) = (a, b, x, b^n y + a^{-m} P, a^m y)
//   psi((a,b),(x,y)) = (a, b, x, b^n y, a^m y - b^{-n} P)
inline VerificationReport hypersurface_embed(const TransitionFunction &f, int m, int n)
{
    return run_report("lemma61", [&](VerificationReport &r) {
        r.input("f", f.f);
        r.input("m", std::to_string(m));
        r.input("n", std::to_string(n));
        const Poly P0 = detail::numerator(f, m, n);
        const Vars vars = hypersurface_vars();
        const Ring R(vars, f.f.field());
        const Poly a = R.var("a"), b = R.var("b"), y = R.var("y"), u = R.var("u"), v = R.var("v");
        const Poly P = embed(P0, vars);
        const Poly ainv = R.var("a", -m), binv = R.var("b", -n);
        const Poly am = a.pow(m), bn = b.pow(n);
        const Poly E = am * u - bn * v - P;

        const Poly phi_u = bn * y + ainv * P, phi_v = am * y;
        const Poly psi_u = bn * y, psi_v = am * y - binv * P;
        auto on_chart = [&](const Poly &pu, const Poly &pv) { return substitute(E, std::map<std::string, Poly>{{"u", pu}, {"v", pv}}); };
        r.check_zero("phi lands on the hypersurface", on_chart(phi_u, phi_v));
        r.check_zero("psi lands on the hypersurface", on_chart(psi_u, psi_v));

        // phi^{-1}(a,b,x,u,v) = (x, a^{-m} v), psi^{-1}(a,b,x,u,v) = (x, b^{-n} u)
        const Poly phi_inv_y = ainv * v, psi_inv_y = binv * u;
        auto at = [](const Poly &p, const std::string &var, const Poly &val) { return substitute(p, std::map<std::string, Poly>{{var, val}}); };
        r.check_equal("phi^-1 o phi", at(phi_inv_y, "v", phi_v), y);
        r.check_equal("psi^-1 o psi", at(psi_inv_y, "u", psi_u), y);
        r.check_zero("phi o phi^-1 = id on the hypersurface, u", am * (at(phi_u, "y", phi_inv_y) - u) + E);
        r.check_equal("phi o phi^-1, v", at(phi_v, "y", phi_inv_y), v);
        r.check_equal("psi o psi^-1, u", at(psi_u, "y", psi_inv_y), u);
        r.check_zero("psi o psi^-1 = id on the hypersurface, v", bn * (at(psi_v, "y", psi_inv_y) - v) - E);

        const Poly t = at(psi_inv_y, "u", phi_u);
        r.check_equal("psi^-1 o phi = (x, y + a^-m b^-n P)", t, y + ainv * binv * P);
        r.check_equal("a^-m b^-n P = f", ainv * binv * P, embed(f.f, vars));
        r.witness_expr("equation", E);
    });
}

// Memberships behind k[a,b,x,a^m y,b^n y + a^{-m}P] in R_a and
// k[a,b,x,b^n y,a^m y - b^{-n}P] in R_b, where the b-chart coordinate is
// y + f and the a-chart coordinate is y - f.
inline VerificationReport prop63_membership(const TransitionFunction &f, int m, int n)
{
    return run_report("prop63", [&](VerificationReport &r) {
        r.input("f", f.f);
        r.input("m", std::to_string(m));
        r.input("n", std::to_string(n));
        const Vars vars = bivariable_vars();
        const Ring R(vars, f.f.field());
        const Poly P = embed(detail::numerator(f, m, n), vars);
        const Poly fx = embed(f.f, vars);
        const Poly y = R.var("y");
        const Poly am = R.var("a").pow(m), bn = R.var("b").pow(n);
        auto shift = [&](const Poly &p, const Poly &by) { return substitute(p, std::map<std::string, Poly>{{"y", y + by}}); };
        auto member = [&](const std::string &name, const Poly &p, const RingDescriptor &ring) {
            r.check(name, in_ring(p, ring), print_canonical(outside_ring(p, ring)));
        };

        const Poly ga = bn * y + R.var("a", -m) * P;
        const Poly gb = am * y - R.var("b", -n) * P;
        member("b^n y + a^-m P in k[a^-1,b,x,y]", ga, ring_a_inverted());
        member("b^n y + a^-m P on the b-chart in k[a,b^-1,x,y]", shift(ga, -fx), ring_b_inverted());
        member("a^m y - b^-n P in k[a,b^-1,x,y]", gb, ring_b_inverted());
        member("a^m y - b^-n P on the a-chart in k[a^-1,b,x,y]", shift(gb, fx), ring_a_inverted());
        member("a^m y on the b-chart in k[a,b^-1,x,y]", shift(am * y, -fx), ring_b_inverted());
        member("b^n y on the a-chart in k[a^-1,b,x,y]", shift(bn * y, fx), ring_a_inverted());
    });
}

// ---------------------------------------------------------------------------
// Classifier

struct TrivialityVerdict {
    enum class Status { Trivial, Nontrivial, Unknown };

    Status status = Status::Unknown;
    std::optional<BivariableCert> cert;   // m = 0 or n = 0
    std::optional<MapWord> variable_word; // straightening word for P
    Poly P;
    int m = 0;
    int n = 0;
    int degree = -1; // of P(0,0,x)

    std::string str() const
    {
        switch (status) {
        case Status::Trivial:
            return cert ? "Trivial: transition function has no pole along " + std::string(m == 0 ? "a" : "b")
                        : "Trivial: deg P(0,0,x) = 1";
        case Status::Nontrivial:
            return "Nontrivial: deg P(0,0,x) = " + std::to_string(degree);
        case Status::Unknown:
            break;
        }
        return "Unknown";
    }

    // Re-checks the attached witness.
    bool reverify() const
    {
        if (status != Status::Trivial) {
            return true;
        }
        if (cert) {
            return verify_cert(*cert).passed();
        }
        return variable_word && verify_lemma62_word(*variable_word, P, m, n);
    }
};

inline TrivialityVerdict classify(const TransitionFunction &f)
{
    TrivialityVerdict v;
    v.m = f.m_min;
    v.n = f.n_min;
    v.P = f.P_num;
    const Vars vars = bivariable_vars();
    const Ring R(vars, f.f.field());
    if (v.m == 0 || v.n == 0) {
        const Poly fx = embed(f.f, vars);
        MapWord alpha(vars, R.field, {"a", "b"});
        MapWord beta = alpha;
        if (v.m == 0) {
            beta.then(Triangular{"y", -fx});
        } else {
            alpha.then(Triangular{"y", fx});
        }
        v.status = TrivialityVerdict::Status::Trivial;
        v.cert = certify(R.var("x"), std::move(alpha), std::move(beta));
        return v;
    }
    const Poly p00 = set_vars_to_zero(f.P_num, {"a", "b"});
    if ((v.m == 1 || v.n == 1) && !p00.is_zero()) {
        v.degree = static_cast<int>(p00.max_exponent(p00.vars().require("x")));
        if (v.degree == 1) {
            v.status = TrivialityVerdict::Status::Trivial;
            v.variable_word = lemma62_variable(f.P_num, v.m, v.n);
        } else {
            v.status = TrivialityVerdict::Status::Nontrivial;
        }
    }
    return v;
}

// ---------------------------------------------------------------------------
// Blow-up chart

// omega = a x + b^2 y + b P(x), alpha = (omega, y/a + (P(x) - P(omega/a))/(ab)),
// beta = (omega, -x/b^2), T_m = (x, y + f_m). Part (1): alpha = T_1 o beta.
// Part (2): alpha^{-1} o T_m o beta = beta^{-1} o T_1^{-1} o T_m o beta and
// its inverse lie in k[a, b, a/b, b/a, x, y].
inline VerificationReport verify_lemma52(const FibrationSpec &spec, int m)
{
    return run_report("lemma52", [&](VerificationReport &r) {
        r.input("P", spec.as_poly(Vars::of({"z"})));
        r.input("n", std::to_string(spec.n));
        r.input("m", std::to_string(m));
        if (m < 1) {
            throw Error(Errc::InvalidArgument, "m must be positive");
        }
        const Vars vars = bivariable_vars();
        const Ring R(vars, spec.field());
        const Poly a = R.var("a"), b = R.var("b"), x = R.var("x"), y = R.var("y");
        const Poly ainv = R.var("a", -1), binv = R.var("b", -1);
        const Poly omega = a * x + b.pow(2) * y + b * spec(x);
        const std::set<std::string> base{"a", "b"};

        auto fm = [&](int k) {
            const Poly anx = a.pow(spec.n) * x;
            return x * ainv * binv.pow(2) - ainv * binv.pow(k) * divide_exact(b.pow(k) - anx.pow(k), b - anx) * spec(ainv * x);
        };

        MapWord beta(vars, R.field, base);
        beta.then(Triangular{"y", (a * x + b * spec(x)) * binv.pow(2)});
        beta.then(Scale{"y", b.pow(2)});
        beta.then(Permute{"x", "y"});
        beta.then(Scale{"y", -binv.pow(2)});
        const PlaneMap alpha(vars, R.field, base, {{"x", omega}, {"y", ainv * y + ainv * binv * (spec(x) - spec(ainv * omega))}});

        r.check_equal("beta = (omega, -x/b^2), x", beta.flatten()["x"], omega);
        r.check_equal("beta = (omega, -x/b^2), y", beta.flatten()["y"], -(x * binv.pow(2)));
        r.check("alpha in G_a", check_membership(alpha, ring_a_inverted()) && jacobian_det(alpha) == R.one());
        r.check("beta in G_b", check_membership(beta.flatten(), ring_b_inverted()) && check_membership(invert(beta).flatten(), ring_b_inverted()));

        MapWord t1 = beta;
        t1.then(Triangular{"y", fm(1)});
        r.check("alpha^-1 o T_1 o beta = id", t1.flatten() == alpha, print_canonical(t1.flatten()["y"] - alpha["y"]));
        r.check("alpha^-1 in G_a", check_membership(invert(t1).flatten(), ring_a_inverted()));

        Poly closed = R.zero();
        for (int k = 1; k < m; ++k) {
            closed = closed + (a.pow(spec.n) * x * binv).pow(k);
        }
        closed = -(ainv * binv * closed * spec(ainv * x));
        r.check_equal("T_1^-1 o T_m closed form", fm(m) - fm(1), closed);

        MapWord c = beta;
        c.then(Triangular{"y", fm(m) - fm(1)}).then(invert(beta));
        const RingDescriptor chart = RingDescriptor::blowup_chart();
        r.check("alpha^-1 o T_m o beta in the blow-up chart ring", check_membership(c.flatten(), chart),
                print_canonical(outside_ring(c.flatten()["x"], chart) + outside_ring(c.flatten()["y"], chart)));
        r.check("inverse in the blow-up chart ring", check_membership(invert(c).flatten(), chart));
        r.check_equal("Jacobian", jacobian_det(c.flatten()), R.one());
        r.witness_expr("composite_x", c.flatten()["x"]);
        r.witness_expr("composite_y", c.flatten()["y"]);
    });
}

} // namespace bivar
