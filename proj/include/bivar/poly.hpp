#pragma once

// Sparse multivariate Laurent polynomials over an exact field.
//
// A polynomial is a finite map from exponent vectors (one signed exponent
// per variable of its VarTable) to nonzero coefficients. Terms are kept
// sorted in descending graded-lexicographic order, so equality of term
// vectors is equality of polynomials.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bivar/error.hpp"
#include "bivar/field.hpp"

namespace bivar {

inline constexpr std::size_t kMaxVars = 8;

class VarTable {
public:
    explicit VarTable(std::vector<std::string> names) : names_(std::move(names)) {}

    const std::vector<std::string> &names() const noexcept { return names_; }
    std::size_t size() const noexcept { return names_.size(); }

    std::optional<std::size_t> index_of(std::string_view name) const noexcept
    {
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (names_[i] == name) {
                return i;
            }
        }
        return std::nullopt;
    }

private:
    std::vector<std::string> names_;
};

// Handle to an interned VarTable; equal handles denote the same ordered list.
class Vars {
public:
    Vars() : table_(of({}).table_) {}

    static Vars of(std::vector<std::string> names)
    {
        if (names.size() > kMaxVars) {
            throw Error(Errc::InvalidArgument, "at most " + std::to_string(kMaxVars) + " variables are supported");
        }
        std::set<std::string> seen;
        for (const auto &n : names) {
            if (n.empty() || !seen.insert(n).second) {
                throw Error(Errc::InvalidArgument, "variable names must be distinct and nonempty");
            }
        }
        static std::mutex mutex;
        static std::vector<std::unique_ptr<VarTable>> tables;
        std::lock_guard<std::mutex> lock(mutex);
        for (const auto &t : tables) {
            if (t->names() == names) {
                return Vars(t.get());
            }
        }
        tables.push_back(std::make_unique<VarTable>(std::move(names)));
        return Vars(tables.back().get());
    }

    const VarTable &table() const noexcept { return *table_; }
    const std::vector<std::string> &names() const noexcept { return table_->names(); }
    std::size_t size() const noexcept { return table_->size(); }
    std::optional<std::size_t> index_of(std::string_view n) const noexcept { return table_->index_of(n); }

    std::size_t require(std::string_view n) const
    {
        auto i = index_of(n);
        if (!i) {
            throw Error(Errc::UnknownVariable, "variable '" + std::string(n) + "' not in table");
        }
        return *i;
    }

    friend bool operator==(Vars l, Vars r) noexcept { return l.table_ == r.table_; }
    friend bool operator!=(Vars l, Vars r) noexcept { return l.table_ != r.table_; }

private:
    explicit Vars(const VarTable *t) : table_(t) {}

    const VarTable *table_;
};

using Exponent = std::int32_t;

struct Monomial {
    std::array<Exponent, kMaxVars> e{};

    Exponent &operator[](std::size_t i) noexcept { return e[i]; }
    Exponent operator[](std::size_t i) const noexcept { return e[i]; }

    std::int64_t total_degree() const noexcept
    {
        std::int64_t s = 0;
        for (auto x : e) {
            s += x;
        }
        return s;
    }

    bool is_one() const noexcept
    {
        return std::all_of(e.begin(), e.end(), [](Exponent x) { return x == 0; });
    }

    friend bool operator==(const Monomial &l, const Monomial &r) noexcept { return l.e == r.e; }
    friend bool operator!=(const Monomial &l, const Monomial &r) noexcept { return l.e != r.e; }
};

namespace detail {

inline Exponent checked_exponent(std::int64_t v)
{
    if (v > std::numeric_limits<Exponent>::max() || v < std::numeric_limits<Exponent>::min()) {
        throw Error(Errc::ExponentOverflow, "exponent " + std::to_string(v) + " out of range");
    }
    return static_cast<Exponent>(v);
}

inline Monomial mono_mul(const Monomial &l, const Monomial &r)
{
    Monomial out;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        out.e[i] = checked_exponent(std::int64_t{l.e[i]} + r.e[i]);
    }
    return out;
}

inline Monomial mono_div(const Monomial &l, const Monomial &r)
{
    Monomial out;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        out.e[i] = checked_exponent(std::int64_t{l.e[i]} - r.e[i]);
    }
    return out;
}

inline Monomial mono_pow(const Monomial &m, std::int64_t k)
{
    Monomial out;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        out.e[i] = checked_exponent(std::int64_t{m.e[i]} * k);
    }
    return out;
}

struct MonomialHash {
    std::size_t operator()(const Monomial &m) const noexcept
    {
        std::uint64_t h = 1469598103934665603ull;
        for (auto x : m.e) {
            h ^= static_cast<std::uint32_t>(x);
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

} // namespace detail

// Graded lexicographic order: total degree first, then the first variable of
// the table is the most significant.
inline bool grlex_less(const Monomial &l, const Monomial &r) noexcept
{
    const auto dl = l.total_degree(), dr = r.total_degree();
    if (dl != dr) {
        return dl < dr;
    }
    return l.e < r.e;
}

class Poly {
public:
    using Term = std::pair<Monomial, FieldElem>;

    Poly() = default;
    Poly(Vars vars, Field field) : vars_(vars), field_(field) {}

    static Poly constant(Vars vars, const FieldElem &c)
    {
        Poly p(vars, c.field());
        if (!c.is_zero()) {
            p.terms_.emplace_back(Monomial{}, c);
        }
        return p;
    }

    static Poly constant(Vars vars, Field field, const mpq_class &c) { return constant(vars, FieldElem(field, c)); }

    static Poly monomial(Vars vars, const Monomial &m, const FieldElem &c)
    {
        Poly p(vars, c.field());
        if (!c.is_zero()) {
            p.terms_.emplace_back(m, c);
        }
        return p;
    }

    static Poly variable(Vars vars, Field field, std::string_view name, Exponent power = 1)
    {
        Monomial m;
        m[vars.require(name)] = power;
        return monomial(vars, m, FieldElem(field, 1L));
    }

    // Builds a polynomial from unsorted, possibly repeated terms.
    static Poly from_terms(Vars vars, Field field, std::vector<Term> terms)
    {
        std::unordered_map<Monomial, FieldElem, detail::MonomialHash> acc;
        acc.reserve(terms.size());
        for (auto &t : terms) {
            auto it = acc.find(t.first);
            if (it == acc.end()) {
                acc.emplace(t.first, std::move(t.second));
            } else {
                it->second += t.second;
            }
        }
        return from_map(vars, field, std::move(acc));
    }

    Vars vars() const noexcept { return vars_; }
    Field field() const noexcept { return field_; }
    const std::vector<Term> &terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_monomial() const noexcept { return terms_.size() == 1; }

    bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }

    FieldElem constant_value() const
    {
        for (const auto &t : terms_) {
            if (t.first.is_one()) {
                return t.second;
            }
        }
        return FieldElem(field_);
    }

    FieldElem coefficient(const Monomial &m) const
    {
        for (const auto &t : terms_) {
            if (t.first == m) {
                return t.second;
            }
        }
        return FieldElem(field_);
    }

    // Leading term under the canonical order.
    const Term &leading() const { return terms_.front(); }

    // Smallest / largest exponent of variable i over all terms (0 for zero).
    Exponent min_exponent(std::size_t i) const noexcept
    {
        if (terms_.empty()) {
            return 0;
        }
        Exponent m = std::numeric_limits<Exponent>::max();
        for (const auto &t : terms_) {
            m = std::min(m, t.first[i]);
        }
        return m;
    }

    Exponent max_exponent(std::size_t i) const noexcept
    {
        if (terms_.empty()) {
            return 0;
        }
        Exponent m = std::numeric_limits<Exponent>::min();
        for (const auto &t : terms_) {
            m = std::max(m, t.first[i]);
        }
        return m;
    }

    Exponent degree_in(std::string_view name) const { return max_exponent(vars_.require(name)); }

    bool involves(std::size_t i) const noexcept
    {
        return std::any_of(terms_.begin(), terms_.end(), [i](const Term &t) { return t.first[i] != 0; });
    }

    bool involves(std::string_view name) const
    {
        auto i = vars_.index_of(name);
        return i && involves(*i);
    }

    Poly operator-() const
    {
        Poly r(vars_, field_);
        r.terms_.reserve(terms_.size());
        for (const auto &t : terms_) {
            r.terms_.emplace_back(t.first, -t.second);
        }
        return r;
    }

    friend Poly operator+(const Poly &l, const Poly &r) { return merge(l, r, false); }
    friend Poly operator-(const Poly &l, const Poly &r) { return merge(l, r, true); }

    friend Poly operator*(const Poly &l, const Poly &r)
    {
        check_compatible(l, r);
        if (l.is_zero() || r.is_zero()) {
            return Poly(l.vars_, l.field_);
        }
        if (l.size() == 1) {
            return r.times_term(l.terms_[0].first, l.terms_[0].second);
        }
        if (r.size() == 1) {
            return l.times_term(r.terms_[0].first, r.terms_[0].second);
        }
        std::unordered_map<Monomial, FieldElem, detail::MonomialHash> acc;
        acc.reserve(l.size() * r.size());
        for (const auto &a : l.terms_) {
            for (const auto &b : r.terms_) {
                const Monomial m = detail::mono_mul(a.first, b.first);
                auto it = acc.find(m);
                if (it == acc.end()) {
                    acc.emplace(m, a.second * b.second);
                } else {
                    it->second.add_product(a.second, b.second);
                }
            }
        }
        return from_map(l.vars_, l.field_, std::move(acc));
    }

    friend Poly operator*(const FieldElem &c, const Poly &p)
    {
        if (c.field() != p.field_) {
            throw Error(Errc::FieldMismatch, "scalar and polynomial over different fields");
        }
        return p.times_term(Monomial{}, c);
    }
    friend Poly operator*(const Poly &p, const FieldElem &c) { return c * p; }

    Poly &operator+=(const Poly &o) { return *this = *this + o; }
    Poly &operator-=(const Poly &o) { return *this = *this - o; }
    Poly &operator*=(const Poly &o) { return *this = *this * o; }

    // Multiplication by c * x^m.
    Poly times_term(const Monomial &m, const FieldElem &c) const
    {
        Poly r(vars_, field_);
        if (c.is_zero()) {
            return r;
        }
        r.terms_.reserve(terms_.size());
        for (const auto &t : terms_) {
            r.terms_.emplace_back(detail::mono_mul(t.first, m), t.second * c);
        }
        // Multiplying by a monomial preserves grlex order.
        return r;
    }

    // Nonnegative powers of anything; negative powers only of single terms.
    Poly pow(std::int64_t e) const
    {
        if (e < 0) {
            if (!is_monomial()) {
                throw Error(Errc::NegativePowerOfNonMonomial, "negative power of a polynomial with "
                                                                  + std::to_string(size()) + " terms");
            }
            return monomial(vars_, detail::mono_pow(terms_[0].first, e), terms_[0].second.pow(e));
        }
        if (is_monomial()) {
            return monomial(vars_, detail::mono_pow(terms_[0].first, e), terms_[0].second.pow(e));
        }
        // Repeated multiplication by the (small) base keeps every product
        // lopsided, which is cheaper than squaring for sparse inputs.
        if (e == 0) {
            return constant(vars_, FieldElem(field_, 1L));
        }
        Poly result = *this;
        for (std::int64_t k = 1; k < e; ++k) {
            result = result * *this;
        }
        return result;
    }

    // Inverse of a single term with invertible coefficient.
    Poly unit_inverse() const { return pow(-1); }

    friend bool operator==(const Poly &l, const Poly &r)
    {
        if (l.is_zero() && r.is_zero()) {
            return true;
        }
        return l.vars_ == r.vars_ && l.field_ == r.field_ && l.terms_ == r.terms_;
    }
    friend bool operator!=(const Poly &l, const Poly &r) { return !(l == r); }

    static void check_compatible(const Poly &l, const Poly &r)
    {
        if (l.vars_ != r.vars_) {
            throw Error(Errc::VarTableMismatch, "operands use different variable tables");
        }
        if (l.field_ != r.field_) {
            throw Error(Errc::FieldMismatch, "operands over " + l.field_.name() + " and " + r.field_.name());
        }
    }

private:
    static Poly from_map(Vars vars, Field field, std::unordered_map<Monomial, FieldElem, detail::MonomialHash> acc)
    {
        Poly p(vars, field);
        p.terms_.reserve(acc.size());
        for (auto &kv : acc) {
            if (!kv.second.is_zero()) {
                p.terms_.emplace_back(kv.first, std::move(kv.second));
            }
        }
        p.sort_terms();
        return p;
    }

    void sort_terms()
    {
        std::sort(terms_.begin(), terms_.end(),
                  [](const Term &a, const Term &b) { return grlex_less(b.first, a.first); });
    }

    static Poly merge(const Poly &l, const Poly &r, bool subtract)
    {
        if (l.is_zero()) {
            if (r.is_zero()) {
                return Poly(l.vars_, l.field_);
            }
            return subtract ? -r : r;
        }
        if (r.is_zero()) {
            return l;
        }
        check_compatible(l, r);
        Poly out(l.vars_, l.field_);
        out.terms_.reserve(l.size() + r.size());
        std::size_t i = 0, j = 0;
        while (i < l.size() || j < r.size()) {
            if (j == r.size() || (i < l.size() && grlex_less(r.terms_[j].first, l.terms_[i].first))) {
                out.terms_.push_back(l.terms_[i++]);
            } else if (i == l.size() || grlex_less(l.terms_[i].first, r.terms_[j].first)) {
                const auto &t = r.terms_[j++];
                out.terms_.emplace_back(t.first, subtract ? -t.second : t.second);
            } else {
                FieldElem c = subtract ? l.terms_[i].second - r.terms_[j].second : l.terms_[i].second + r.terms_[j].second;
                if (!c.is_zero()) {
                    out.terms_.emplace_back(l.terms_[i].first, std::move(c));
                }
                ++i;
                ++j;
            }
        }
        return out;
    }

    Vars vars_;
    Field field_;
    std::vector<Term> terms_;
};

// A polynomial ring context: a variable table plus a coefficient field.
// Used to spell formulas compactly.
struct Ring {
    Vars vars;
    Field field;

    Ring(std::vector<std::string> names, Field f = Field::rationals()) : vars(Vars::of(std::move(names))), field(f) {}
    Ring(Vars v, Field f = Field::rationals()) : vars(v), field(f) {}

    Poly var(std::string_view name, Exponent power = 1) const { return Poly::variable(vars, field, name, power); }
    Poly zero() const { return Poly(vars, field); }
    Poly one() const { return c(1); }
    Poly c(long v) const { return Poly::constant(vars, FieldElem(field, v)); }
    Poly c(long num, long den) const { return Poly::constant(vars, FieldElem(field, mpq_class(num, den))); }
    Poly c(const mpq_class &v) const { return Poly::constant(vars, FieldElem(field, v)); }
    Poly c(const FieldElem &v) const { return Poly::constant(vars, v); }
    FieldElem k(long v) const { return FieldElem(field, v); }
    FieldElem k(long num, long den) const { return FieldElem(field, mpq_class(num, den)); }
};

// ---------------------------------------------------------------------------
// Substitution

// Image of one variable under a ring homomorphism. When the variable occurs
// with negative exponents in the source, those powers are sent to powers of
// `inverse` (or of the inverse of `value` when it is a unit).
struct Image {
    Poly value;
    std::optional<Poly> inverse;
};

// Ring-homomorphism image of p. All images must live over one target table;
// unassigned variables of p are sent to the target variable of the same name.
inline Poly substitute(const Poly &p, const std::map<std::string, Image> &assignments, std::optional<Vars> target = {})
{
    Vars tv = target ? *target : (assignments.empty() ? p.vars() : assignments.begin()->second.value.vars());
    const Field field = p.field();
    for (const auto &[name, img] : assignments) {
        if (img.value.vars() != tv) {
            throw Error(Errc::VarTableMismatch, "image of '" + name + "' uses a different variable table");
        }
        if (img.value.field() != field) {
            throw Error(Errc::FieldMismatch, "image of '" + name + "' over a different field");
        }
    }
    const auto &src = p.vars().names();
    struct Slot {
        Poly pos;
        std::optional<Poly> neg;
        std::map<std::int64_t, Poly> cache;
    };
    std::vector<std::optional<Slot>> slots(src.size());
    auto slot = [&](std::size_t i) -> Slot & {
        if (!slots[i]) {
            Slot s;
            auto it = assignments.find(src[i]);
            if (it != assignments.end()) {
                s.pos = it->second.value;
                s.neg = it->second.inverse;
            } else {
                auto j = tv.index_of(src[i]);
                if (!j) {
                    throw Error(Errc::UnknownVariable, "variable '" + src[i] + "' has no image in the target table");
                }
                s.pos = Poly::variable(tv, field, src[i]);
            }
            slots[i] = std::move(s);
        }
        return *slots[i];
    };
    auto power = [&](std::size_t i, std::int64_t e) -> const Poly & {
        Slot &s = slot(i);
        auto it = s.cache.find(e);
        if (it != s.cache.end()) {
            return it->second;
        }
        Poly value(tv, field);
        if (e > 0) {
            // Step up from the nearest cached lower power one factor at a
            // time; for sparse images this beats repeated squaring.
            std::int64_t best = 0;
            for (auto jt = s.cache.lower_bound(1); jt != s.cache.end() && jt->first < e; ++jt) {
                best = jt->first;
            }
            if (best == 0) {
                best = 1;
                s.cache.emplace(1, s.pos);
            }
            for (std::int64_t k = best + 1; k < e; ++k) {
                s.cache.emplace(k, s.cache.at(k - 1) * s.pos);
            }
            value = e == 1 ? s.pos : s.cache.at(e - 1) * s.pos;
        } else {
            if (s.neg) {
                value = s.neg->pow(-e);
            } else if (s.pos.is_monomial()) {
                value = s.pos.pow(e);
            } else {
                throw Error(Errc::NonInvertibleImageForLaurentVariable,
                            "variable '" + src[i] + "' occurs with a negative exponent but its image is not a unit");
            }
        }
        return s.cache.emplace(e, std::move(value)).first->second;
    };

    std::unordered_map<Monomial, FieldElem, detail::MonomialHash> acc;
    for (const auto &[mono, coeff] : p.terms()) {
        Poly term = Poly::constant(tv, coeff);
        for (std::size_t i = 0; i < src.size(); ++i) {
            if (mono[i] != 0) {
                term = term * power(i, mono[i]);
            }
        }
        for (auto &t : term.terms()) {
            auto it = acc.find(t.first);
            if (it == acc.end()) {
                acc.emplace(t.first, t.second);
            } else {
                it->second += t.second;
            }
        }
    }
    std::vector<Poly::Term> terms;
    terms.reserve(acc.size());
    for (auto &kv : acc) {
        if (!kv.second.is_zero()) {
            terms.emplace_back(kv.first, std::move(kv.second));
        }
    }
    return Poly::from_terms(tv, field, std::move(terms));
}

inline Poly substitute(const Poly &p, const std::map<std::string, Poly> &assignments, std::optional<Vars> target = {})
{
    std::map<std::string, Image> imgs;
    for (const auto &[k, v] : assignments) {
        imgs.emplace(k, Image{v, std::nullopt});
    }
    return substitute(p, imgs, target);
}

// Re-expresses p over another table containing all variables p uses.
inline Poly embed(const Poly &p, Vars target) { return substitute(p, std::map<std::string, Image>{}, target); }

// ---------------------------------------------------------------------------
// Division

// q with q * den == num exactly, in the Laurent polynomial ring.
//
// Both operands are shifted by monomials into the polynomial ring with den
// free of monomial factors; there, divisibility in the Laurent ring agrees
// with polynomial divisibility and is decided by long division in grlex.
inline Poly divide_exact(const Poly &num, const Poly &den)
{
    Poly::check_compatible(num, den);
    if (den.is_zero()) {
        throw Error(Errc::DivisionByZero, "division by the zero polynomial");
    }
    if (num.is_zero()) {
        return num;
    }
    if (den.is_monomial()) {
        return num * den.unit_inverse();
    }
    const std::size_t n = num.vars().size();
    Monomial num_shift, den_shift;
    for (std::size_t i = 0; i < n; ++i) {
        num_shift[i] = num.min_exponent(i);
        den_shift[i] = den.min_exponent(i);
    }
    const FieldElem one(num.field(), 1L);
    Poly r = num.times_term(detail::mono_pow(num_shift, -1), one);
    const Poly d = den.times_term(detail::mono_pow(den_shift, -1), one);
    const auto &[dlead, dcoef] = d.leading();
    const FieldElem dinv = dcoef.inverse();
    std::vector<Poly::Term> q;
    while (!r.is_zero()) {
        const auto &[rlead, rcoef] = r.leading();
        Monomial t = detail::mono_div(rlead, dlead);
        for (std::size_t i = 0; i < n; ++i) {
            if (t[i] < 0) {
                throw Error(Errc::NotDivisible, "nonzero remainder in exact division");
            }
        }
        FieldElem c = rcoef * dinv;
        r = r - d.times_term(t, c);
        q.emplace_back(std::move(t), std::move(c));
    }
    Poly quotient = Poly::from_terms(num.vars(), num.field(), std::move(q));
    return quotient.times_term(detail::mono_div(num_shift, den_shift), one);
}

// ---------------------------------------------------------------------------
// Calculus and inspection

inline Poly partial_derivative(const Poly &p, std::string_view var)
{
    const std::size_t i = p.vars().require(var);
    std::vector<Poly::Term> out;
    out.reserve(p.size());
    for (const auto &[m, c] : p.terms()) {
        if (m[i] == 0) {
            continue;
        }
        Monomial dm = m;
        dm[i] = m[i] - 1;
        out.emplace_back(dm, c * FieldElem(p.field(), static_cast<long>(m[i])));
    }
    return Poly::from_terms(p.vars(), p.field(), std::move(out));
}

// Describes a subring of the Laurent ring by exponent constraints. Variables
// are lower-bounded by 0 unless declared Laurent; linear constraints read
// sum(coeff_v * e_v) >= bound.
class RingDescriptor {
public:
    struct LinearConstraint {
        std::map<std::string, long> coeffs;
        long bound = 0;
    };

    RingDescriptor() = default;

    static RingDescriptor polynomial() { return {}; }
    static RingDescriptor laurent(std::initializer_list<std::string> vars)
    {
        RingDescriptor r;
        r.laurent_.insert(vars.begin(), vars.end());
        return r;
    }

    RingDescriptor with_laurent(std::string var) const
    {
        RingDescriptor r = *this;
        r.laurent_.insert(std::move(var));
        return r;
    }

    RingDescriptor with_constraint(std::map<std::string, long> coeffs, long bound) const
    {
        RingDescriptor r = *this;
        r.constraints_.push_back({std::move(coeffs), bound});
        return r;
    }

    bool is_laurent(const std::string &v) const { return laurent_.count(v) != 0; }
    const std::set<std::string> &laurent_vars() const noexcept { return laurent_; }
    const std::vector<LinearConstraint> &constraints() const noexcept { return constraints_; }

    // k[a, b, a/b, b/a, x, y]: exponents of a and b may be negative as long as
    // their sum is not.
    static RingDescriptor blowup_chart()
    {
        return laurent({"a", "b"}).with_constraint({{"a", 1}, {"b", 1}}, 0);
    }

    bool admits(const Monomial &m, Vars vars) const
    {
        const auto &names = vars.names();
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (m[i] < 0 && !is_laurent(names[i])) {
                return false;
            }
        }
        for (const auto &c : constraints_) {
            long s = 0;
            for (const auto &[v, k] : c.coeffs) {
                s += k * m[vars.require(v)];
            }
            if (s < c.bound) {
                return false;
            }
        }
        return true;
    }

private:
    std::set<std::string> laurent_;
    std::vector<LinearConstraint> constraints_;
};

inline bool in_ring(const Poly &p, const RingDescriptor &ring)
{
    return std::all_of(p.terms().begin(), p.terms().end(),
                       [&](const Poly::Term &t) { return ring.admits(t.first, p.vars()); });
}

// Terms of p lying outside the ring (empty iff in_ring).
inline Poly outside_ring(const Poly &p, const RingDescriptor &ring)
{
    std::vector<Poly::Term> bad;
    for (const auto &t : p.terms()) {
        if (!ring.admits(t.first, p.vars())) {
            bad.push_back(t);
        }
    }
    return Poly::from_terms(p.vars(), p.field(), std::move(bad));
}

// p == q modulo var^k inside an ambient ring in which var is not inverted.
inline bool congruent_mod_power(const Poly &p, const Poly &q, std::string_view var, int k, const RingDescriptor &ambient)
{
    const Poly diff = p - q;
    const std::size_t i = diff.vars().require(var);
    if (!in_ring(diff, ambient) || diff.min_exponent(i) < 0) {
        throw Error(Errc::NotInAmbientRing, "difference leaves the ambient ring");
    }
    return std::all_of(diff.terms().begin(), diff.terms().end(), [&](const Poly::Term &t) { return t.first[i] >= k; });
}

// Terms of p with var-exponent below k: the residual of a congruence mod var^k.
inline Poly truncate_below(const Poly &p, std::string_view var, int k)
{
    const std::size_t i = p.vars().require(var);
    std::vector<Poly::Term> keep;
    for (const auto &t : p.terms()) {
        if (t.first[i] < k) {
            keep.push_back(t);
        }
    }
    return Poly::from_terms(p.vars(), p.field(), std::move(keep));
}

struct NegativeParts {
    Poly doubly_negative; // e_a < 0 and e_b < 0
    Poly b_nonneg;        // e_b >= 0
    Poly a_nonneg_b_neg;  // e_a >= 0, e_b < 0
};

// Unique monomial-sign decomposition of p in k[a^{±1}, b^{±1}][x].
inline NegativeParts split_negative_parts(const Poly &p)
{
    const Vars vars = p.vars();
    const auto ia = vars.index_of("a"), ib = vars.index_of("b");
    for (std::size_t i = 0; i < vars.size(); ++i) {
        const auto &n = vars.names()[i];
        if (n != "a" && n != "b" && n != "x" && p.involves(i)) {
            throw Error(Errc::UnexpectedVariable, "variable '" + n + "' outside k[a^{±1},b^{±1}][x]");
        }
    }
    if (auto ix = vars.index_of("x"); ix && p.min_exponent(*ix) < 0) {
        throw Error(Errc::UnexpectedVariable, "negative power of x");
    }
    std::vector<Poly::Term> dn, bn, an;
    for (const auto &t : p.terms()) {
        const Exponent ea = ia ? t.first[*ia] : 0, eb = ib ? t.first[*ib] : 0;
        if (ea < 0 && eb < 0) {
            dn.push_back(t);
        } else if (eb >= 0) {
            bn.push_back(t);
        } else {
            an.push_back(t);
        }
    }
    return {Poly::from_terms(vars, p.field(), std::move(dn)), Poly::from_terms(vars, p.field(), std::move(bn)),
            Poly::from_terms(vars, p.field(), std::move(an))};
}

inline Poly set_vars_to_zero(const Poly &p, const std::set<std::string> &names)
{
    std::vector<std::size_t> idx;
    for (const auto &n : names) {
        if (auto i = p.vars().index_of(n)) {
            idx.push_back(*i);
        }
    }
    std::vector<Poly::Term> keep;
    for (const auto &t : p.terms()) {
        bool zero = false;
        for (auto i : idx) {
            if (t.first[i] < 0) {
                throw Error(Errc::NegativeExponentAtZero,
                            "variable '" + p.vars().names()[i] + "' has a negative exponent");
            }
            zero = zero || t.first[i] > 0;
        }
        if (!zero) {
            keep.push_back(t);
        }
    }
    return Poly::from_terms(p.vars(), p.field(), std::move(keep));
}

// Coefficient of var^k, as a polynomial not involving var.
inline Poly coefficient_of(const Poly &p, std::string_view var, Exponent k)
{
    const std::size_t i = p.vars().require(var);
    std::vector<Poly::Term> keep;
    for (const auto &t : p.terms()) {
        if (t.first[i] == k) {
            Monomial m = t.first;
            m[i] = 0;
            keep.emplace_back(m, t.second);
        }
    }
    return Poly::from_terms(p.vars(), p.field(), std::move(keep));
}

// Evaluates p at a point; every variable of p must be assigned, and those
// occurring with negative exponents must be nonzero.
inline FieldElem evaluate(const Poly &p, const std::map<std::string, FieldElem> &point)
{
    FieldElem sum(p.field());
    const auto &names = p.vars().names();
    for (const auto &[m, c] : p.terms()) {
        FieldElem term = c;
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (m[i] == 0) {
                continue;
            }
            auto it = point.find(names[i]);
            if (it == point.end()) {
                throw Error(Errc::UnknownVariable, "no value for '" + names[i] + "'");
            }
            term *= it->second.pow(m[i]);
        }
        sum += term;
    }
    return sum;
}

// Dense coefficient list of a univariate polynomial in `var` with constant
// coefficients, lowest degree first.
inline std::vector<FieldElem> univariate_coefficients(const Poly &p, std::string_view var)
{
    const std::size_t i = p.vars().require(var);
    for (const auto &t : p.terms()) {
        for (std::size_t j = 0; j < p.vars().size(); ++j) {
            if ((j != i && t.first[j] != 0) || (j == i && t.first[j] < 0)) {
                throw Error(Errc::UnexpectedVariable, "expected a polynomial in " + std::string(var) + " only");
            }
        }
    }
    std::vector<FieldElem> c(static_cast<std::size_t>(std::max<Exponent>(p.max_exponent(i), 0)) + 1, FieldElem(p.field()));
    for (const auto &t : p.terms()) {
        c[static_cast<std::size_t>(t.first[i])] = t.second;
    }
    return c;
}

// p(arg) for p univariate in `var`; Horner evaluation over arg's ring.
inline Poly compose_univariate(const Poly &p, std::string_view var, const Poly &arg)
{
    const auto c = univariate_coefficients(p, var);
    Poly acc(arg.vars(), arg.field());
    for (std::size_t k = c.size(); k-- > 0;) {
        acc = acc * arg + Poly::constant(arg.vars(), c[k]);
    }
    return acc;
}

} // namespace bivar
