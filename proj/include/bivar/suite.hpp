#pragma once

// Named verification runs, one report per id.

#include <algorithm>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bivar/a1equiv.hpp"
#include "bivar/bivariable.hpp"
#include "bivar/bundles.hpp"
#include "bivar/expr.hpp"
#include "bivar/report.hpp"
#include "bivar/venereau.hpp"

namespace bivar {

struct VerifyParams {
    std::optional<Field> field; // unset: the id's default (Q, or Q(sqrt 5) for ex47)
    std::optional<std::string> P;
    std::optional<int> n;
    std::optional<int> m;
    int s_max = 12;
};

namespace data {

inline const char *const f3 = "x*a^-1*b^-2 - x^2*a^-3*b^-1";
inline const char *const f2 = "x*a^-1*b^-2 - x^2*a^-3*b^-1 - x^3*a^-1*b^-2";
inline const char *const f1 = "x*a^-1*b^-2 - x^2*a^-3*b^-1 - x^3*a^-2*b^-2 - x^4*a^-1*b^-3";
inline const char *const g46 = "x*a^-1*b^-2 - x^2*a^-3*b^-1 - x^3*a^-2*b^-2 - 5/4*x^4*a^-1*b^-3";
inline const char *const g48 = "x*a^-1*b^-2 - x^2*a^-3*b^-1 + 1/4*x^4*a^-1*b^-3";
inline const std::vector<std::string> fibration_polys{"z^2", "z^2 + z", "z^3 + 2*z"};

} // namespace data

namespace detail {

inline Field field_or_q(const VerifyParams &p) { return p.field.value_or(Field::rationals()); }

inline std::vector<FibrationSpec> fibrations(const VerifyParams &p, std::vector<int> ns = {1, 2, 3})
{
    const Vars z = Vars::of({"z"});
    const Field k = field_or_q(p);
    std::vector<std::string> polys = p.P ? std::vector<std::string>{*p.P} : data::fibration_polys;
    if (p.n) {
        ns = {*p.n};
    }
    std::vector<FibrationSpec> out;
    for (const auto &s : polys) {
        for (int n : ns) {
            out.emplace_back(parse(s, z, k, ParseOptions{{}}), n);
        }
    }
    return out;
}

inline std::string label(const FibrationSpec &s)
{
    return "P=" + print_canonical(s.as_poly(Vars::of({"z"}))) + ", n=" + std::to_string(s.n);
}

inline void sub(VerificationReport &r, const std::string &label, const VerificationReport &s)
{
    r.absorb(label + ": ", s);
}

} // namespace detail

// The four-step word for phi_{P,n}.
inline VerificationReport verify_lemma21(const VerifyParams &p)
{
    return run_report("lemma21", [&](VerificationReport &r) {
        const RingDescriptor chart = RingDescriptor::laurent({"x"});
        for (const auto &spec : detail::fibrations(p)) {
            const std::string l = detail::label(spec) + ": ";
            r.input(detail::label(spec), "");
            const Ring R(venereau_vars(), spec.field());
            const Poly x = R.var("x"), y = R.var("y"), z = R.var("z"), u = R.var("u");
            const MapWord w = build_phi(spec);
            const PlaneMap &phi = w.flatten();
            r.check_equal(l + "first component x", phi["x"], x);
            r.check_equal(l + "second component v", phi["y"], build_v(spec));
            r.check_equal(l + "third component xz + y(uy + P(z))", phi["z"], x * z + y * (u * y + spec(z)));
            r.check_equal(l + "Jacobian", jacobian_det(phi), R.one());
            r.check(l + "components in k[x^-1,y,z,u]", check_membership(phi, chart));
            r.check(l + "word o inverse word = id", concat(w, invert(w)).flatten().is_identity());
            r.check(l + "inverse word o word = id", concat(invert(w), w).flatten().is_identity());
        }
    });
}

// Smallest s with Phi_{x^s t} polynomial.
inline VerificationReport verify_prop22(const VerifyParams &p)
{
    return run_report("prop22", [&](VerificationReport &r) {
        const Vars z = Vars::of({"z"});
        const FibrationSpec spec(parse(p.P.value_or("z^2"), z, detail::field_or_q(p), ParseOptions{{}}), p.n.value_or(1));
        r.input("P", spec.as_poly(z));
        r.input("n", std::to_string(spec.n));
        r.input("s_max", std::to_string(p.s_max));
        r.check("Phi_0 = id", stable_automorphism(spec, -1).flatten().is_identity());
        const StableVariable sv = stable_variable(spec, p.s_max);
        const Vars vars = sv.Psi.vars();
        const Ring R(vars, spec.field());
        const Poly v = build_v(spec, vars);
        r.check("Psi polynomial", check_membership(sv.Psi.flatten(), RingDescriptor::polynomial()));
        r.check_equal("Jacobian", jacobian_det(sv.Psi.flatten()), R.one());
        r.check_equal("Psi(v) = v + x^s t", sv.Psi.flatten().pullback(v), v + R.var("x").pow(sv.s) * R.var("t"));
        if (sv.s > 1) {
            r.check("x^(s-1) t gives no polynomial map",
                    !check_membership(stable_automorphism(spec, sv.s - 1).flatten(), RingDescriptor::polynomial()));
        }
        r.witness.emplace_back("s", std::to_string(sv.s));
    });
}

// Transition formula checks for each (P, n) at the smallest legal m.
inline VerificationReport verify_thm12_suite(const VerifyParams &p)
{
    return run_report("thm12", [&](VerificationReport &r) {
        for (const auto &spec : detail::fibrations(p)) {
            const int m = p.m.value_or(smallest_m(spec));
            r.input(detail::label(spec), "m=" + std::to_string(m));
            detail::sub(r, detail::label(spec) + ", m=" + std::to_string(m), verify_thm12(spec, m));
        }
    });
}

// f_3, f_2, f_1 for the Venereau polynomials.
inline VerificationReport verify_ex23(const VerifyParams &p)
{
    return run_report("ex23", [&](VerificationReport &r) {
        const Field k = detail::field_or_q(p);
        const Poly z2 = parse("z^2", Vars::of({"z"}), k);
        const std::vector<std::tuple<int, int, const char *>> cases{{3, 1, data::f3}, {2, 2, data::f2}, {1, 3, data::f1}};
        for (const auto &[n, m, expected] : cases) {
            const TransitionFunction f = transition_function(FibrationSpec(z2, n), m);
            const std::string l = "n=" + std::to_string(n) + ", m=" + std::to_string(m);
            r.check_equal(l, f.f, parse(expected, transition_vars(), k));
            r.witness_expr("f (" + l + ")", f.f);
        }
    });
}

// Closed forms for n > deg P (m = 1) and n = deg P (m = 2).
inline VerificationReport verify_ex24(const VerifyParams &p)
{
    return run_report("ex24", [&](VerificationReport &r) {
        const Field k = detail::field_or_q(p);
        const Ring R(transition_vars(), k);
        const Poly a = R.var("a"), b = R.var("b"), x = R.var("x");
        const Poly base = x * R.var("a", -1) * R.var("b", -2);
        for (const auto &s : p.P ? std::vector<std::string>{*p.P} : data::fibration_polys) {
            const Poly Pz = parse(s, Vars::of({"z"}), k, ParseOptions{{}});
            const FibrationSpec probe(Pz, 1);
            const int d = probe.degree();
            const Poly Px = probe(x * R.var("a", -1));
            const TransitionFunction f1 = transition_function(FibrationSpec(Pz, d + 1), 1);
            r.check_equal("P=" + s + ", n=" + std::to_string(d + 1) + ", m=1", f1.f, base - R.var("a", -1) * R.var("b", -1) * Px);
            const TransitionFunction f2 = transition_function(FibrationSpec(Pz, d), 2);
            r.check_equal("P=" + s + ", n=" + std::to_string(d) + ", m=2", f2.f,
                          base - R.var("a", -1) * R.var("b", -1) * Px - a.pow(d - 1) * R.var("b", -2) * x * Px);
        }
    });
}

// Linear bivariable: omega = a^m x + b^n y.
inline VerificationReport verify_ex35(const VerifyParams &p)
{
    return run_report("ex35", [&](VerificationReport &r) {
        std::vector<std::pair<int, int>> cases{{1, 1}, {1, 2}, {2, 3}};
        if (p.m || p.n) {
            cases = {{p.m.value_or(1), p.n.value_or(1)}};
        }
        const Ring T(transition_vars());
        for (const auto &[m, n] : cases) {
            const std::string l = "m=" + std::to_string(m) + ", n=" + std::to_string(n);
            const BivariableCert c = linear_bivariable(m, n);
            r.check_equal(l + ": f = x/(a^m b^n)", c.f.f, T.var("x") * T.var("a", -m) * T.var("b", -n));
            detail::sub(r, l, verify_cert(c));
            r.witness_expr("f (" + l + ")", c.f.f);
        }
    });
}

// omega = a^m x + b^n y + P(a,b), f = (x - P)/(a^m b^n).
inline VerificationReport verify_ex312(const VerifyParams &p)
{
    return run_report("ex312", [&](VerificationReport &r) {
        const Field k = detail::field_or_q(p);
        const Ring R(bivariable_vars(), k);
        const Ring T(transition_vars(), k);
        const std::string ps = p.P.value_or("a*b + 3");
        const Poly P = parse(ps, R);
        std::vector<std::pair<int, int>> cases{{1, 1}, {2, 1}, {2, 3}};
        if (p.m || p.n) {
            cases = {{p.m.value_or(1), p.n.value_or(1)}};
        }
        r.input("P", P);
        for (const auto &[m, n] : cases) {
            const std::string l = "m=" + std::to_string(m) + ", n=" + std::to_string(n);
            const BivariableCert c = linear_bivariable(m, n, P);
            r.check_equal(l + ": f = (x - P)/(a^m b^n)", c.f.f, (T.var("x") - parse(ps, T)) * T.var("a", -m) * T.var("b", -n));
            detail::sub(r, l, verify_cert(c));
        }
    });
}

// extend_b of a x + b^2 y with Q(T) = P(-T).
inline VerificationReport verify_ex43(const VerifyParams &p)
{
    return run_report("ex43", [&](VerificationReport &r) {
        const Field k = detail::field_or_q(p);
        const FibrationSpec spec(parse(p.P.value_or("z^2"), Vars::of({"z"}), k, ParseOptions{{}}), 2);
        r.input("P", spec.as_poly(Vars::of({"z"})));
        const BivariableCert c = example43(spec);
        const Ring R(bivariable_vars(), k);
        const Ring T(transition_vars(), k);
        const Poly a = R.var("a"), b = R.var("b"), x = R.var("x"), y = R.var("y");
        r.check_equal("omega_hat = a x + b^2 y + b P(x)", c.omega, a * x + b.pow(2) * y + b * spec(x));
        const Poly tx = T.var("x");
        r.check_equal("f_hat = x/(a b^2) - P(x/a)/(a b)", c.f.f,
                      tx * T.var("a", -1) * T.var("b", -2) - T.var("a", -1) * T.var("b", -1) * spec(tx * T.var("a", -1)));
        detail::sub(r, "certificate", verify_cert(c));
        r.witness_expr("omega_hat", c.omega);
        r.witness_expr("f_hat", c.f.f);
    });
}

inline VerificationReport verify_lemma44(const VerifyParams &p)
{
    const Field k = detail::field_or_q(p);
    const FibrationSpec spec(parse(p.P.value_or("z^2"), Vars::of({"z"}), k, ParseOptions{{}}), 2);
    VerificationReport r;
    try {
        r = lemma44_bivariable(spec).report;
    } catch (const Error &e) {
        r = run_report("lemma44", [&](VerificationReport &) { throw e; });
    }
    r.check_id = "lemma44";
    return r;
}

namespace detail {

inline VerificationReport prop45_example(const std::string &id, const Field &k, const std::string &fb, const std::string &gb,
                                         const Poly &Q)
{
    const Ring T(transition_vars(), k);
    VerificationReport r = prop45_check(T.var("a").pow(3) * parse(fb, T), T.var("a").pow(3) * parse(gb, T), 3, Q, id);
    return r;
}

} // namespace detail

// f_3 against the target with coefficient 5/4, Q = x/2.
inline VerificationReport verify_ex46(const VerifyParams &p)
{
    const Field k = detail::field_or_q(p);
    const Ring T(transition_vars(), k);
    VerificationReport r = detail::prop45_example("ex46", k, data::f3, data::g46, T.c(1, 2) * T.var("x"));
    const auto t0 = std::chrono::steady_clock::now();
    try {
        std::vector<FieldElem> pool;
        for (const auto &q : {mpq_class(0), mpq_class(1, 2), mpq_class(-1, 2), mpq_class(1), mpq_class(-1)}) {
            pool.emplace_back(k, q);
        }
        const Prop45Search s = prop45_search(T.var("a").pow(3) * parse(data::f3, T), T.var("a").pow(3) * parse(data::g46, T), 3, 1, pool);
        r.check("search over {0, 1/2, -1/2, 1, -1}, deg <= 1 finds Q = x/2", s.Q && *s.Q == T.c(1, 2) * T.var("x"),
                s.Q ? print_canonical(*s.Q) : "none");
    } catch (const Error &e) {
        r.error = e.code();
        r.error_message = e.what();
    }
    r.millis += std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

// Needs a square root xi of 1/5; over Q[t]/(5t^2 - 1), xi = t.
// The congruence is checked with f_b and g_b in the order that makes it hold.
inline VerificationReport verify_ex47(const VerifyParams &p)
{
    const Field k = p.field.value_or(parse_field("ext:5t^2-1"));
    const Ring T(transition_vars(), k);
    std::optional<FieldElem> xi;
    if (k.characteristic() != 2 && k.characteristic() != 5) {
        xi = find_sqrt(FieldElem(k, mpq_class(1, 5)));
    }
    if (!xi) {
        return run_report("ex47", [&](VerificationReport &r) {
            r.input("field", k.name());
            throw Error(Errc::InvalidField, "field " + k.name() + " has characteristic 2 or 5 or no square root of 5");
        });
    }
    const Poly ex = T.c(*xi);
    const Poly g = parse(data::f3, T) + ex * T.var("x").pow(3) * T.var("a", -2) * T.var("b", -2);
    const Poly a3 = T.var("a").pow(3);
    const Poly Q = (T.one() + ex) * T.c(1, 2) * T.var("x");
    VerificationReport r = prop45_check(a3 * g, a3 * parse(data::f1, T), 3, Q, "ex47");
    r.input("xi", print_canonical(ex));
    r.input("field", k.name());
    return r;
}

// f_1 against the target with coefficient 1/4, Q = x/2.
inline VerificationReport verify_ex48(const VerifyParams &p)
{
    const Field k = detail::field_or_q(p);
    const Ring T(transition_vars(), k);
    return detail::prop45_example("ex48", k, data::g48, data::f1, T.c(1, 2) * T.var("x"));
}

inline VerificationReport verify_lemma52_suite(const VerifyParams &p)
{
    return run_report("lemma52", [&](VerificationReport &r) {
        std::vector<int> ms{1, 2, 3};
        if (p.m) {
            ms = {*p.m};
        }
        VerifyParams q = p;
        if (!q.P) {
            q.P = "z^2";
        }
        for (const auto &spec : detail::fibrations(q)) {
            for (int m : ms) {
                detail::sub(r, detail::label(spec) + ", m=" + std::to_string(m), verify_lemma52(spec, m));
            }
        }
    });
}

// Chart embedding on three bundles, with the straightening word for P = x.
inline VerificationReport verify_lemma61(const VerifyParams &p)
{
    return run_report("lemma61", [&](VerificationReport &r) {
        const Field k = detail::field_or_q(p);
        const Ring T(transition_vars(), k);
        const std::vector<std::tuple<std::string, int, int>> cases{{"x*a^-1*b^-1", 1, 1}, {data::f3, 3, 2}, {data::f1, 3, 3}};
        for (const auto &[f, m, n] : cases) {
            detail::sub(r, "f=" + f + ", m=" + std::to_string(m) + ", n=" + std::to_string(n),
                        hypersurface_embed(TransitionFunction(parse(f, T)), m, n));
        }
        const Ring L(lemma62_vars(), k);
        const MapWord W = lemma62_variable(L.var("x"), 1, 1);
        r.check("straightening word for a u - b v - x", verify_lemma62_word(W, L.var("x"), 1, 1));
    });
}

inline VerificationReport verify_prop63(const VerifyParams &p)
{
    return run_report("prop63", [&](VerificationReport &r) {
        const Field k = detail::field_or_q(p);
        const Ring T(transition_vars(), k);
        const std::vector<std::tuple<std::string, int, int>> cases{{"x*a^-1*b^-2", 1, 2}, {"0", 0, 0}, {data::f1, 3, 3}};
        for (const auto &[f, m, n] : cases) {
            detail::sub(r, "f=" + f + ", m=" + std::to_string(m) + ", n=" + std::to_string(n),
                        prop63_membership(TransitionFunction(parse(f, T)), m, n));
        }
    });
}

// Explicit certificate together with the classifier on the small-denominator cases.
inline VerificationReport verify_ex66(const VerifyParams &p)
{
    return run_report("ex66", [&](VerificationReport &r) {
        const Field k = detail::field_or_q(p);
        const Ring T(transition_vars(), k);
        const BivariableCert c = example66(k);
        r.check_equal("f = (a + b) x/(a^2 b^2)", c.f.f, (T.var("a") + T.var("b")) * T.var("x") * T.var("a", -2) * T.var("b", -2));
        detail::sub(r, "certificate", verify_cert(c));
        using S = TrivialityVerdict::Status;
        auto verdict = [&](const std::string &f, S expected) {
            const TrivialityVerdict v = classify(TransitionFunction(parse(f, T)));
            r.check("classify(" + f + ") = " + v.str(), v.status == expected && v.reverify());
        };
        verdict("(a + b)*x*a^-2*b^-2", S::Unknown);
        verdict(data::f3, S::Unknown);
        verdict("x^2*a^-1*b^-1", S::Nontrivial);
        for (int n = 1; n <= 3; ++n) {
            verdict("x*a^-1*b^-" + std::to_string(n), S::Trivial);
        }
        r.witness_expr("omega", c.omega);
        r.witness_expr("f", c.f.f);
    });
}

using VerifyFn = std::function<VerificationReport(const VerifyParams &)>;

inline const std::map<std::string, VerifyFn> &verify_registry()
{
    static const std::map<std::string, VerifyFn> reg{
        {"lemma21", verify_lemma21}, {"prop22", verify_prop22},   {"thm12", verify_thm12_suite},
        {"ex23", verify_ex23},       {"ex24", verify_ex24},       {"ex35", verify_ex35},
        {"ex312", verify_ex312},     {"ex43", verify_ex43},       {"lemma44", verify_lemma44},
        {"ex46", verify_ex46},       {"ex47", verify_ex47},       {"ex48", verify_ex48},
        {"lemma52", verify_lemma52_suite}, {"lemma61", verify_lemma61}, {"prop63", verify_prop63},
        {"ex66", verify_ex66},
    };
    return reg;
}

inline std::vector<std::string> verify_ids()
{
    std::vector<std::string> ids;
    for (const auto &[k, v] : verify_registry()) {
        ids.push_back(k);
    }
    return ids;
}

inline VerificationReport run_verify(const std::string &id, const VerifyParams &p = {})
{
    const auto &reg = verify_registry();
    const auto it = reg.find(id);
    if (it == reg.end()) {
        throw Error(Errc::InvalidArgument, "unknown check id '" + id + "'");
    }
    return it->second(p);
}

// Every id with its default parameters (plus the field, if given), sorted by id.
inline std::vector<VerificationReport> verify_all(const VerifyParams &p = {}, bool parallel = false)
{
    VerifyParams q;
    q.field = p.field;
    std::vector<VerificationReport> out;
    if (parallel) {
        std::vector<std::future<VerificationReport>> jobs;
        for (const auto &id : verify_ids()) {
            jobs.push_back(std::async(std::launch::async, [id, q] { return run_verify(id, q); }));
        }
        for (auto &j : jobs) {
            out.push_back(j.get());
        }
    } else {
        for (const auto &id : verify_ids()) {
            out.push_back(run_verify(id, q));
        }
    }
    return out;
}

} // namespace bivar
