#pragma once

// Constructions around v_{P,n} = y + x^n (x z + y (y u + P(z))) on k[x,y,z,u].

#include <future>
#include <optional>
#include <string>
#include <vector>

#include "bivar/error.hpp"
#include "bivar/polymap.hpp"
#include "bivar/poly.hpp"
#include "bivar/report.hpp"

namespace bivar {

// P in k[z], stored densely (lowest degree first), together with n >= 1.
struct FibrationSpec {
    std::vector<FieldElem> P;
    int n = 1;

    FibrationSpec(const Poly &p_of_z, int n_) : P(univariate_coefficients(p_of_z, "z")), n(n_)
    {
        if (n < 1) {
            throw Error(Errc::InvalidArgument, "n must be positive");
        }
        while (!P.empty() && P.back().is_zero()) {
            P.pop_back();
        }
        if (P.size() < 3) {
            throw Error(Errc::InvalidArgument, "P must have degree at least 2");
        }
    }

    Field field() const { return P.empty() ? Field::rationals() : P.front().field(); }
    int degree() const { return static_cast<int>(P.size()) - 1; }

    // P(arg)
    Poly operator()(const Poly &arg) const
    {
        Poly acc(arg.vars(), arg.field());
        for (std::size_t k = P.size(); k-- > 0;) {
            acc = acc * arg + Poly::constant(arg.vars(), P[k]);
        }
        return acc;
    }

    Poly as_poly(Vars vars, const std::string &var = "z") const
    {
        return (*this)(Poly::variable(vars, field(), var));
    }
};

inline Vars venereau_vars() { return Vars::of({"x", "y", "z", "u"}); }
inline Vars transition_vars() { return Vars::of({"a", "b", "x"}); }

// f in k[a^{±1}, b^{±1}][x] with its minimal denominator a^m_min b^n_min.
struct TransitionFunction {
    Poly f;
    int m_min = 0;
    int n_min = 0;
    Poly P_num;

    TransitionFunction() = default;

    explicit TransitionFunction(Poly f_) : f(std::move(f_))
    {
        const Vars vars = f.vars();
        for (std::size_t i = 0; i < vars.size(); ++i) {
            const auto &n = vars.names()[i];
            if (n != "a" && n != "b" && n != "x" && f.involves(i)) {
                throw Error(Errc::UnexpectedVariable, "transition function involves " + n);
            }
        }
        if (f.involves("x") && f.min_exponent(vars.require("x")) < 0) {
            throw Error(Errc::UnexpectedVariable, "negative power of x in transition function");
        }
        Monomial shift;
        if (auto i = vars.index_of("a")) {
            m_min = std::max(0, -f.min_exponent(*i));
            shift[*i] = m_min;
        }
        if (auto i = vars.index_of("b")) {
            n_min = std::max(0, -f.min_exponent(*i));
            shift[*i] = n_min;
        }
        P_num = f.times_term(shift, FieldElem(f.field(), 1L));
    }
};

inline Poly build_v(const FibrationSpec &spec, Vars vars = venereau_vars())
{
    const Ring R(vars, spec.field());
    const Poly x = R.var("x"), y = R.var("y"), z = R.var("z"), u = R.var("u");
    return y + x.pow(spec.n) * (x * z + y * (y * u + spec(z)));
}

// phi_{P,n} = phi4 o phi3 o phi2 o phi1 as a word over a table containing
// x, y, z, u; x is the (Laurent) base variable.
inline MapWord build_phi(const FibrationSpec &spec, Vars vars = venereau_vars(), std::set<std::string> base = {"x"})
{
    const Ring R(vars, spec.field());
    const Poly x = R.var("x"), y = R.var("y"), z = R.var("z"), u = R.var("u");
    const Poly xinv = R.var("x", -1);
    MapWord w(vars, R.field, std::move(base));
    // phi1: u -> y u + P(z)
    w.then(Scale{"u", y}).then(Triangular{"u", spec(z)});
    // phi2: z -> x z + y u, u -> u / x
    w.then(Scale{"z", x}).then(Triangular{"z", y * u}).then(Scale{"u", xinv});
    // phi3: u -> (u - P(z/x)/x) / y
    w.then(Triangular{"u", -(xinv * spec(xinv * z))}).then(Scale{"u", R.var("y", -1)});
    // phi4: y -> y + x^n z
    w.then(Triangular{"y", x.pow(spec.n) * z});
    return w;
}

// The transition function of the restricted fibration, for any m with
// m n > deg P.
inline TransitionFunction transition_function(const FibrationSpec &spec, int m)
{
    if (m < 1 || static_cast<long>(m) * spec.n <= spec.degree()) {
        throw Error(Errc::PreconditionViolated, "need m n > deg P (m = " + std::to_string(m) + ", n = "
                                                    + std::to_string(spec.n) + ", deg P = " + std::to_string(spec.degree()) + ")");
    }
    const Ring R(transition_vars(), spec.field());
    const Poly a = R.var("a"), b = R.var("b"), x = R.var("x");
    const Poly an_x = a.pow(spec.n) * x;
    const Poly quotient = divide_exact(b.pow(m) - an_x.pow(m), b - an_x);
    const Poly f = x * R.var("a", -1) * R.var("b", -2) - (a * b.pow(m)).pow(-1) * quotient * spec(x * R.var("a", -1));
    return TransitionFunction(f);
}

// Smallest m with m n > deg P.
inline int smallest_m(const FibrationSpec &spec) { return std::max(1, spec.degree() / spec.n + 1); }

// Symbolic verification of the transition-function theorem for (P, n, m).
//
// The last step writes (F^{-1} o phi)^*(u) as a polynomial in w = 1/v with
// coefficients in k[x^{±1}, y^{±1}, z, u]. The displayed decomposition uses
// w v = 1, so both sides are multiplied by v^M (M the top power of w) before
// comparing; the resulting H must moreover be a polynomial, which is the
// statement that no power of x remains in the denominator.
inline VerificationReport verify_thm12(const FibrationSpec &spec, int m)
{
    return run_report("thm12", [&](VerificationReport &r) {
        const Ring R(venereau_vars(), spec.field());
        r.input("P", spec.as_poly(Vars::of({"z"})));
        r.input("n", std::to_string(spec.n));
        r.input("m", std::to_string(m));
        const Poly x = R.var("x"), y = R.var("y"), z = R.var("z"), u = R.var("u");
        const Poly xinv = R.var("x", -1);
        const Poly v = build_v(spec);
        const RingDescriptor poly_ring;

        const Poly omega = divide_exact(v - y, x.pow(spec.n));
        r.check_equal("omega", omega, x * z + y * (u * y + spec(z)));

        const Poly cong = u * v.pow(2) * y + v.pow(2) * spec(z) - omega * y;
        r.check("congruence mod x", congruent_mod_power(cong, R.zero(), "x", 1, poly_ring), print_canonical(truncate_below(cong, "x", 1)));

        const long mn = static_cast<long>(m) * spec.n;
        const Poly tail = x.pow(mn - 1) * spec(xinv * omega);
        const bool tail_poly = in_ring(tail, poly_ring);
        if (mn <= spec.degree()) {
            r.check("x^(mn-1) P(omega/x) polynomial", false, print_canonical(outside_ring(tail, poly_ring)));
            r.error = Errc::PreconditionViolated;
            r.error_message = "PreconditionViolated: m n = " + std::to_string(mn) + " <= deg P = " + std::to_string(spec.degree());
            return;
        }
        r.check("x^(mn-1) P(omega/x) polynomial", tail_poly, print_canonical(outside_ring(tail, poly_ring)));

        // F^{-1}(u) over (x, y, z, u)
        const Poly xnz = x.pow(spec.n) * z;
        const Poly q = divide_exact(y.pow(m) - xnz.pow(m), y - xnz);
        const Poly finv_u = u - z * xinv * R.var("y", -2) + (x * y.pow(m)).pow(-1) * q * spec(xinv * z);

        const PlaneMap phi = build_phi(spec).flatten();
        const Vars wide = Vars::of({"x", "y", "z", "u", "w"});
        const Poly w = Poly::variable(wide, R.field, "w");
        std::map<std::string, Image> images;
        images.emplace("y", Image{embed(phi["y"], wide), w});
        images.emplace("z", Image{embed(phi["z"], wide), std::nullopt});
        images.emplace("u", Image{embed(phi["u"], wide), std::nullopt});
        const Poly G = substitute(finv_u, images, wide);

        const int M = std::max({2, m, static_cast<int>(G.max_exponent(wide.require("w")))});
        Poly H = embed(R.zero(), wide);
        const Poly vw = embed(v, wide);
        for (int j = 0; j <= M; ++j) {
            const Poly Nj = coefficient_of(G, "w", j);
            if (!Nj.is_zero()) {
                H = H + Nj * vw.pow(M - j);
            }
        }
        const Poly xw = embed(x, wide), yw = embed(y, wide);
        const Poly expected = (xw * yw).pow(-1) * embed(cong, wide) * vw.pow(M - 2)
                              - embed(omega, wide).pow(m) * yw.pow(-1) * embed(tail, wide) * vw.pow(M - m);
        r.check_equal("decomposition of (F^-1 o phi)^*(u)", H, expected);
        r.check("v^M (F^-1 o phi)^*(u) polynomial", in_ring(H, poly_ring), print_canonical(outside_ring(H, poly_ring)));
        r.witness_expr("omega", omega);
    });
}

struct StableVariable {
    int s = 0;
    MapWord Psi;
};

namespace detail {

inline MapWord stable_word(const FibrationSpec &spec, int s)
{
    const Vars vars = Vars::of({"x", "y", "z", "u", "t"});
    const Ring R(vars, spec.field());
    const MapWord phi = build_phi(spec, vars, {"x"});
    MapWord w = phi;
    w.then(Triangular{"y", s < 0 ? R.zero() : R.var("x").pow(s) * R.var("t")});
    w.then(invert(phi));
    return w;
}

} // namespace detail

// Phi_xi = F o H_xi o F^{-1} with xi = x^s t (xi = 0 for s < 0), as a word
// of point maps over (x, y, z, u, t).
inline MapWord stable_automorphism(const FibrationSpec &spec, int s) { return detail::stable_word(spec, s); }

// Smallest s in [1, s_max] for which Phi_{x^s t} is polynomial; the result
// is verified to have Jacobian 1 and to send v to v + x^s t.
inline StableVariable stable_variable(const FibrationSpec &spec, int s_max = 12, bool parallel = false)
{
    const RingDescriptor poly_ring;
    auto polynomial = [&](const MapWord &w) { return check_membership(w.flatten(), poly_ring); };
    std::optional<StableVariable> found;
    if (parallel) {
        std::vector<std::future<std::optional<MapWord>>> jobs;
        for (int s = 1; s <= s_max; ++s) {
            jobs.push_back(std::async(std::launch::async, [&, s]() -> std::optional<MapWord> {
                MapWord w = detail::stable_word(spec, s);
                return polynomial(w) ? std::optional<MapWord>(std::move(w)) : std::nullopt;
            }));
        }
        for (int s = 1; s <= s_max; ++s) {
            auto w = jobs[static_cast<std::size_t>(s - 1)].get();
            if (w && !found) {
                found = StableVariable{s, std::move(*w)};
            }
        }
    } else {
        for (int s = 1; s <= s_max && !found; ++s) {
            MapWord w = detail::stable_word(spec, s);
            if (polynomial(w)) {
                found = StableVariable{s, std::move(w)};
            }
        }
    }
    if (!found) {
        throw Error(Errc::NoPolynomialSInRange, "no s <= " + std::to_string(s_max) + " gives a polynomial automorphism");
    }
    const PlaneMap &psi = found->Psi.flatten();
    const Vars vars = psi.vars();
    const Ring R(vars, spec.field());
    if (jacobian_det(psi) != R.one()) {
        throw Error(Errc::JacobianNotUnit, "stable automorphism has Jacobian " + print_canonical(jacobian_det(psi)));
    }
    const Poly v = build_v(spec, vars);
    if (psi.pullback(v) != v + R.var("x").pow(found->s) * R.var("t")) {
        throw Error(Errc::ShapeError, "stable automorphism does not send v to v + x^s t");
    }
    return *found;
}

} // namespace bivar
