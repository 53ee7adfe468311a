#pragma once

// Exact coefficient fields: the rationals, prime fields F_p and simple
// algebraic extensions Q[t]/(m(t)) with deg m in {2, 3}.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "bivar/error.hpp"

namespace bivar {

enum class FieldKind { Rationals, PrimeField, QuotientExtension };

struct FieldSpec {
    FieldKind kind = FieldKind::Rationals;
    std::uint64_t p = 0;
    // Monic minimal polynomial, coefficients from t^0 upwards.
    std::vector<mpq_class> minpoly;

    std::uint64_t characteristic() const noexcept { return kind == FieldKind::PrimeField ? p : 0; }
    std::size_t ext_degree() const noexcept
    {
        return kind == FieldKind::QuotientExtension ? minpoly.size() - 1 : 1;
    }
};

namespace detail {

// Dense univariate polynomials over Q, lowest degree first; used for the
// extension field arithmetic.
using UPoly = std::vector<mpq_class>;

inline void trim(UPoly &p)
{
    while (!p.empty() && p.back() == 0) {
        p.pop_back();
    }
}

inline UPoly upoly_mul(const UPoly &a, const UPoly &b)
{
    if (a.empty() || b.empty()) {
        return {};
    }
    UPoly r(a.size() + b.size() - 1, mpq_class(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] += a[i] * b[j];
        }
    }
    trim(r);
    return r;
}

// Quotient and remainder of a by a nonzero b.
inline std::pair<UPoly, UPoly> upoly_divmod(UPoly a, const UPoly &b)
{
    trim(a);
    UPoly q;
    if (a.size() < b.size()) {
        return {q, a};
    }
    q.assign(a.size() - b.size() + 1, mpq_class(0));
    const mpq_class &lead = b.back();
    while (!a.empty() && a.size() >= b.size()) {
        const std::size_t shift = a.size() - b.size();
        const mpq_class c = a.back() / lead;
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) {
            a[shift + i] -= c * b[i];
        }
        trim(a);
    }
    trim(q);
    return {q, a};
}

inline UPoly upoly_sub(const UPoly &a, const UPoly &b)
{
    UPoly r(std::max(a.size(), b.size()), mpq_class(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] += a[i];
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        r[i] -= b[i];
    }
    trim(r);
    return r;
}

inline bool is_prime_u64(std::uint64_t n)
{
    if (n < 2) {
        return false;
    }
    mpz_class z(static_cast<unsigned long>(n));
    return mpz_probab_prime_p(z.get_mpz_t(), 40) != 0;
}

inline std::vector<mpz_class> positive_divisors(mpz_class n)
{
    n = abs(n);
    std::vector<mpz_class> out;
    if (n == 0) {
        return out;
    }
    for (mpz_class d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n) {
                out.push_back(n / d);
            }
        }
    }
    return out;
}

// Rational root test; the polynomial must have degree >= 1.
inline bool has_rational_root(const UPoly &monic)
{
    // Clear denominators to an integer polynomial.
    mpz_class l = 1;
    for (const auto &c : monic) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    }
    std::vector<mpz_class> ints;
    for (const auto &c : monic) {
        mpq_class s = c * l;
        ints.push_back(s.get_num());
    }
    if (ints.front() == 0) {
        return true;
    }
    const auto nums = positive_divisors(ints.front());
    const auto dens = positive_divisors(ints.back());
    for (const auto &pn : nums) {
        for (const auto &qd : dens) {
            for (int sign : {1, -1}) {
                mpq_class r(pn * sign, qd);
                r.canonicalize();
                mpq_class acc = 0;
                for (auto it = monic.rbegin(); it != monic.rend(); ++it) {
                    acc = acc * r + *it;
                }
                if (acc == 0) {
                    return true;
                }
            }
        }
    }
    return false;
}

class FieldRegistry {
public:
    static FieldRegistry &instance()
    {
        static FieldRegistry reg;
        return reg;
    }

    const FieldSpec *intern(FieldSpec spec)
    {
        std::lock_guard<std::mutex> lock(mutex_);
        for (const auto &s : specs_) {
            if (s->kind == spec.kind && s->p == spec.p && s->minpoly == spec.minpoly) {
                return s.get();
            }
        }
        specs_.push_back(std::make_unique<FieldSpec>(std::move(spec)));
        return specs_.back().get();
    }

private:
    std::mutex mutex_;
    std::vector<std::unique_ptr<FieldSpec>> specs_;
};

} // namespace detail

// Handle to an interned, immutable FieldSpec. Two handles denote the same
// field iff they compare equal.
class Field {
public:
    Field() : spec_(rationals().spec_) {}

    static Field rationals()
    {
        static const FieldSpec *q = detail::FieldRegistry::instance().intern(FieldSpec{});
        return Field(q);
    }

    static Field prime(std::uint64_t p)
    {
        if (p > (std::uint64_t{1} << 62) || !detail::is_prime_u64(p)) {
            throw Error(Errc::InvalidField, "modulus " + std::to_string(p) + " is not a supported prime");
        }
        FieldSpec s;
        s.kind = FieldKind::PrimeField;
        s.p = p;
        return Field(detail::FieldRegistry::instance().intern(std::move(s)));
    }

    // Q[t]/(m). The polynomial is normalized to be monic; degree 2 or 3 is
    // required so that irreducibility reduces to the rational root test.
    static Field extension(std::vector<mpq_class> coeffs)
    {
        detail::trim(coeffs);
        if (coeffs.size() < 3) {
            throw Error(Errc::InvalidField, "minimal polynomial must have degree >= 2");
        }
        if (coeffs.size() > 4) {
            throw Error(Errc::InvalidField, "extensions of degree > 3 are not supported");
        }
        const mpq_class lead = coeffs.back();
        for (auto &c : coeffs) {
            c /= lead;
        }
        if (detail::has_rational_root(coeffs)) {
            throw Error(Errc::InvalidField, "minimal polynomial is reducible over Q");
        }
        FieldSpec s;
        s.kind = FieldKind::QuotientExtension;
        s.minpoly = std::move(coeffs);
        return Field(detail::FieldRegistry::instance().intern(std::move(s)));
    }

    const FieldSpec &spec() const noexcept { return *spec_; }
    FieldKind kind() const noexcept { return spec_->kind; }
    std::uint64_t characteristic() const noexcept { return spec_->characteristic(); }

    // Short textual form accepted by the CLI: "q", "fp:<p>", "ext:<m(t)>".
    std::string name() const
    {
        switch (spec_->kind) {
        case FieldKind::Rationals: return "q";
        case FieldKind::PrimeField: return "fp:" + std::to_string(spec_->p);
        case FieldKind::QuotientExtension: {
            std::ostringstream os;
            os << "ext:";
            bool first = true;
            for (std::size_t i = spec_->minpoly.size(); i-- > 0;) {
                const mpq_class &c = spec_->minpoly[i];
                if (c == 0) {
                    continue;
                }
                mpq_class mag = abs(c);
                if (first) {
                    if (c < 0) {
                        os << "-";
                    }
                } else {
                    os << (c < 0 ? " - " : " + ");
                }
                first = false;
                if (i == 0) {
                    os << mag.get_str();
                } else {
                    if (mag != 1) {
                        os << mag.get_str() << "*";
                    }
                    os << "t";
                    if (i > 1) {
                        os << "^" << i;
                    }
                }
            }
            return os.str();
        }
        }
        return "?";
    }

    friend bool operator==(Field lhs, Field rhs) noexcept { return lhs.spec_ == rhs.spec_; }
    friend bool operator!=(Field lhs, Field rhs) noexcept { return lhs.spec_ != rhs.spec_; }

private:
    explicit Field(const FieldSpec *s) : spec_(s) {}

    const FieldSpec *spec_;
};

// True iff the characteristic of the field is not among the forbidden primes.
inline bool char_check(Field field, const std::set<std::uint64_t> &forbidden)
{
    return forbidden.count(field.characteristic()) == 0;
}

// An exact element of a Field. For the rationals and F_p the value lives in
// c0 (for F_p as the residue in [0, p)); extension elements keep the
// coefficients of t^1.. in hi, trimmed so that zero has one representation.
class FieldElem {
public:
    FieldElem() = default;
    explicit FieldElem(Field field) : field_(field) {}

    FieldElem(Field field, const mpq_class &value) : field_(field)
    {
        if (field.kind() == FieldKind::PrimeField) {
            c0_ = reduce_mod_p(value);
        } else {
            c0_ = value;
        }
    }

    FieldElem(Field field, long value) : FieldElem(field, mpq_class(value)) {}

    // Residue class of sum coeffs[i] t^i in an extension field.
    static FieldElem from_coeffs(Field field, detail::UPoly coeffs)
    {
        if (field.kind() != FieldKind::QuotientExtension) {
            detail::trim(coeffs);
            if (coeffs.size() > 1) {
                throw Error(Errc::FieldMismatch, "polynomial residue in a field without generator");
            }
            return FieldElem(field, coeffs.empty() ? mpq_class(0) : coeffs[0]);
        }
        FieldElem r(field);
        r.set_full(reduce_ext(field, std::move(coeffs)));
        return r;
    }

    // The class of t in Q[t]/(m).
    static FieldElem generator(Field field)
    {
        if (field.kind() != FieldKind::QuotientExtension) {
            throw Error(Errc::FieldMismatch, "field " + field.name() + " has no generator t");
        }
        return from_coeffs(field, {mpq_class(0), mpq_class(1)});
    }

    Field field() const noexcept { return field_; }

    bool is_zero() const noexcept { return c0_ == 0 && hi_.empty(); }
    bool is_one() const noexcept { return c0_ == 1 && hi_.empty(); }
    // True when the element lies in the prime field (no t part).
    bool is_scalar() const noexcept { return hi_.empty(); }
    const mpq_class &scalar() const noexcept { return c0_; }

    detail::UPoly full() const
    {
        detail::UPoly r;
        r.push_back(c0_);
        r.insert(r.end(), hi_.begin(), hi_.end());
        detail::trim(r);
        return r;
    }

    FieldElem operator-() const
    {
        FieldElem r(field_);
        if (field_.kind() == FieldKind::PrimeField) {
            r.c0_ = c0_ == 0 ? mpq_class(0) : mpq_class(mpz_class(static_cast<unsigned long>(field_.spec().p)) - c0_.get_num());
        } else {
            r.c0_ = -c0_;
            r.hi_.reserve(hi_.size());
            for (const auto &c : hi_) {
                r.hi_.push_back(-c);
            }
        }
        return r;
    }

    friend FieldElem operator+(const FieldElem &l, const FieldElem &r)
    {
        check_same(l, r);
        FieldElem out(l.field_);
        switch (l.field_.kind()) {
        case FieldKind::Rationals: out.c0_ = l.c0_ + r.c0_; break;
        case FieldKind::PrimeField: out.c0_ = l.reduce_mod_p(l.c0_ + r.c0_); break;
        case FieldKind::QuotientExtension: {
            out.c0_ = l.c0_ + r.c0_;
            const std::size_t n = std::max(l.hi_.size(), r.hi_.size());
            out.hi_.assign(n, mpq_class(0));
            for (std::size_t i = 0; i < l.hi_.size(); ++i) {
                out.hi_[i] += l.hi_[i];
            }
            for (std::size_t i = 0; i < r.hi_.size(); ++i) {
                out.hi_[i] += r.hi_[i];
            }
            detail::trim(out.hi_);
            break;
        }
        }
        return out;
    }

    friend FieldElem operator-(const FieldElem &l, const FieldElem &r) { return l + (-r); }

    friend FieldElem operator*(const FieldElem &l, const FieldElem &r)
    {
        check_same(l, r);
        FieldElem out(l.field_);
        switch (l.field_.kind()) {
        case FieldKind::Rationals: out.c0_ = l.c0_ * r.c0_; break;
        case FieldKind::PrimeField: out.c0_ = l.reduce_mod_p(l.c0_ * r.c0_); break;
        case FieldKind::QuotientExtension:
            if (l.hi_.empty() && r.hi_.empty()) {
                out.c0_ = l.c0_ * r.c0_;
            } else {
                out.set_full(reduce_ext(l.field_, detail::upoly_mul(l.full(), r.full())));
            }
            break;
        }
        return out;
    }

    FieldElem inverse() const
    {
        if (is_zero()) {
            throw Error(Errc::DivisionByZero, "inverse of zero");
        }
        FieldElem out(field_);
        switch (field_.kind()) {
        case FieldKind::Rationals: out.c0_ = 1 / c0_; break;
        case FieldKind::PrimeField: {
            mpz_class inv;
            const mpz_class p(static_cast<unsigned long>(field_.spec().p));
            mpz_invert(inv.get_mpz_t(), c0_.get_num_mpz_t(), p.get_mpz_t());
            out.c0_ = inv;
            break;
        }
        case FieldKind::QuotientExtension: {
            if (hi_.empty()) {
                out.c0_ = 1 / c0_;
                break;
            }
            // Extended Euclid: s*e + u*m = 1, so s is the inverse of e.
            detail::UPoly r0 = field_.spec().minpoly, r1 = full();
            detail::UPoly s0, s1{mpq_class(1)};
            while (!r1.empty()) {
                auto [q, r] = detail::upoly_divmod(r0, r1);
                detail::UPoly s2 = detail::upoly_sub(s0, detail::upoly_mul(q, s1));
                r0 = std::move(r1);
                r1 = std::move(r);
                s0 = std::move(s1);
                s1 = std::move(s2);
            }
            // r0 is a nonzero constant since m is irreducible.
            const mpq_class c = r0.at(0);
            for (auto &x : s0) {
                x /= c;
            }
            out.set_full(reduce_ext(field_, std::move(s0)));
            break;
        }
        }
        return out;
    }

    friend FieldElem operator/(const FieldElem &l, const FieldElem &r)
    {
        check_same(l, r);
        return l * r.inverse();
    }

    FieldElem &operator+=(const FieldElem &o)
    {
        if (field_.kind() == FieldKind::Rationals && field_ == o.field_) {
            c0_ += o.c0_;
            return *this;
        }
        return *this = *this + o;
    }

    // *this += a * b, with an allocation-free path over Q.
    void add_product(const FieldElem &a, const FieldElem &b)
    {
        if (field_.kind() == FieldKind::Rationals && field_ == a.field_ && field_ == b.field_) {
            mpq_class t = a.c0_ * b.c0_;
            c0_ += t;
            return;
        }
        *this += a * b;
    }
    FieldElem &operator-=(const FieldElem &o) { return *this = *this - o; }
    FieldElem &operator*=(const FieldElem &o) { return *this = *this * o; }

    FieldElem pow(long e) const
    {
        if (e < 0) {
            return inverse().pow(-e);
        }
        FieldElem result(field_, 1L), base = *this;
        while (e > 0) {
            if (e & 1) {
                result *= base;
            }
            base *= base;
            e >>= 1;
        }
        return result;
    }

    friend bool operator==(const FieldElem &l, const FieldElem &r)
    {
        return l.field_ == r.field_ && l.c0_ == r.c0_ && l.hi_ == r.hi_;
    }
    friend bool operator!=(const FieldElem &l, const FieldElem &r) { return !(l == r); }

    // Printing helpers used by the polynomial printer: a coefficient is
    // "negative" when it is a single negative term such as -3/2 or -2*t.
    bool prints_negative() const noexcept
    {
        if (field_.kind() == FieldKind::PrimeField) {
            return false;
        }
        int nonzero = c0_ != 0 ? 1 : 0;
        bool neg = c0_ < 0;
        for (const auto &c : hi_) {
            if (c != 0) {
                ++nonzero;
                neg = c < 0;
            }
        }
        return nonzero == 1 && neg;
    }
    // True when str() is a compound expression needing parentheses as a factor.
    bool is_compound() const noexcept
    {
        if (hi_.empty()) {
            return false;
        }
        std::size_t nz = c0_ != 0 ? 1 : 0;
        for (const auto &c : hi_) {
            nz += c != 0 ? 1 : 0;
        }
        return nz > 1 || c0_ < 0 || std::any_of(hi_.begin(), hi_.end(), [](const mpq_class &c) { return c < 0; });
    }

    // "p/q" for rationals, the residue for F_p, a polynomial in t otherwise.
    std::string str() const
    {
        if (hi_.empty()) {
            return c0_.get_str();
        }
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = hi_.size() + 1; i-- > 0;) {
            const mpq_class &c = i == 0 ? c0_ : hi_[i - 1];
            if (c == 0) {
                continue;
            }
            const mpq_class mag = abs(c);
            if (first) {
                if (c < 0) {
                    os << "-";
                }
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            first = false;
            if (i == 0) {
                os << mag.get_str();
                continue;
            }
            if (mag != 1) {
                os << mag.get_str() << "*";
            }
            os << "t";
            if (i > 1) {
                os << "^" << i;
            }
        }
        return os.str();
    }

private:
    static void check_same(const FieldElem &l, const FieldElem &r)
    {
        if (l.field_ != r.field_) {
            throw Error(Errc::FieldMismatch, "operands over " + l.field_.name() + " and " + r.field_.name());
        }
    }

    mpq_class reduce_mod_p(const mpq_class &v) const
    {
        const mpz_class p(static_cast<unsigned long>(field_.spec().p));
        mpz_class num = v.get_num() % p;
        mpz_class den = v.get_den() % p;
        if (den == 0) {
            throw Error(Errc::DivisionByZero, "denominator divisible by p = " + p.get_str());
        }
        if (num < 0) {
            num += p;
        }
        if (den != 1) {
            mpz_class inv;
            mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
            num = (num * inv) % p;
        }
        return mpq_class(num);
    }

    static detail::UPoly reduce_ext(Field field, detail::UPoly c)
    {
        const auto &m = field.spec().minpoly;
        const std::size_t d = m.size() - 1;
        detail::trim(c);
        for (std::size_t k = c.size(); k-- > d;) {
            const mpq_class lead = c[k];
            if (lead == 0) {
                continue;
            }
            for (std::size_t i = 0; i <= d; ++i) {
                c[k - d + i] -= lead * m[i];
            }
        }
        c.resize(std::min(c.size(), d));
        detail::trim(c);
        return c;
    }

    void set_full(detail::UPoly c)
    {
        c0_ = c.empty() ? mpq_class(0) : c[0];
        hi_.clear();
        if (c.size() > 1) {
            hi_.assign(c.begin() + 1, c.end());
        }
        detail::trim(hi_);
    }

    Field field_;
    mpq_class c0_{0};
    std::vector<mpq_class> hi_;
};

// Generic dispatcher over the six field operations.
enum class FieldOp { Add, Sub, Mul, Div, Neg, Inv };

inline FieldElem field_arith(FieldOp op, const FieldElem &lhs, const FieldElem &rhs)
{
    switch (op) {
    case FieldOp::Add: return lhs + rhs;
    case FieldOp::Sub: return lhs - rhs;
    case FieldOp::Mul: return lhs * rhs;
    case FieldOp::Div: return lhs / rhs;
    case FieldOp::Neg: return -lhs;
    case FieldOp::Inv: return lhs.inverse();
    }
    return lhs;
}

// A square root of v in the field, if one exists and is easy to find:
// brute force for small F_p, the generator for Q[t]/(t^2 - v).
inline std::optional<FieldElem> find_sqrt(const FieldElem &v)
{
    const Field f = v.field();
    if (f.kind() == FieldKind::PrimeField) {
        const std::uint64_t p = f.spec().p;
        if (p > 1000000) {
            return std::nullopt;
        }
        for (std::uint64_t r = 0; r < p; ++r) {
            FieldElem c(f, mpq_class(static_cast<unsigned long>(r)));
            if (c * c == v) {
                return c;
            }
        }
        return std::nullopt;
    }
    if (f.kind() == FieldKind::QuotientExtension) {
        const FieldElem t = FieldElem::generator(f);
        if (t * t == v) {
            return t;
        }
        if ((-t) * (-t) == v) {
            return -t;
        }
    }
    if (v.is_scalar() && v.scalar() >= 0) {
        mpz_class n = v.scalar().get_num(), d = v.scalar().get_den();
        mpz_class rn = sqrt(n), rd = sqrt(d);
        if (rn * rn == n && rd * rd == d) {
            return FieldElem(f, mpq_class(rn, rd));
        }
    }
    return std::nullopt;
}

} // namespace bivar
