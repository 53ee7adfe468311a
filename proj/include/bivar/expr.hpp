#pragma once

// Text format for polynomials.
//
//   expr     := ['-'] term (('+' | '-') term)*
//   term     := atom ('*' atom)*
//   atom     := base ('^' ['-'] int)?
//   base     := rational | variable | '(' expr ')'
//   rational := int ('/' int)?
//
// Over an extension field the identifier t denotes the generator unless t is
// itself a variable of the table.

#include <cctype>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bivar/error.hpp"
#include "bivar/field.hpp"
#include "bivar/poly.hpp"

namespace bivar {

struct ParseOptions {
    // Variables that may carry negative exponents.
    std::set<std::string> laurent{"a", "b"};

    static ParseOptions allowing(std::initializer_list<std::string> extra)
    {
        ParseOptions o;
        o.laurent.insert(extra.begin(), extra.end());
        return o;
    }
};

namespace detail {

class Parser {
public:
    Parser(std::string_view src, Vars vars, Field field, const ParseOptions &opts)
        : src_(src), vars_(vars), field_(field), opts_(opts)
    {
    }

    Poly parse()
    {
        Poly p = expr();
        skip();
        if (pos_ != src_.size()) {
            fail("unexpected '" + std::string(1, src_[pos_]) + "'");
        }
        return p;
    }

private:
    [[noreturn]] void fail(const std::string &msg) const { throw ParseError(Errc::SyntaxError, pos_, msg); }

    void skip()
    {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek()
    {
        skip();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    Poly expr()
    {
        const bool neg = accept('-');
        Poly acc = term();
        if (neg) {
            acc = -acc;
        }
        for (;;) {
            if (accept('+')) {
                acc = acc + term();
            } else if (accept('-')) {
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    Poly term()
    {
        Poly acc = atom();
        while (accept('*')) {
            acc = acc * atom();
        }
        return acc;
    }

    mpz_class integer()
    {
        skip();
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected an integer");
        }
        return mpz_class(std::string(src_.substr(start, pos_ - start)));
    }

    Poly atom()
    {
        skip();
        const std::size_t start = pos_;
        enum class Kind { Number, Variable, Group } kind;
        std::string name;
        Poly base;
        const char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            kind = Kind::Number;
            mpq_class q(integer());
            if (accept('/')) {
                const std::size_t at = pos_;
                mpz_class d = integer();
                if (d == 0) {
                    throw ParseError(Errc::DivisionByZero, at, "zero denominator");
                }
                q /= d;
            }
            base = Poly::constant(vars_, FieldElem(field_, q));
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            kind = Kind::Variable;
            while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                name.push_back(src_[pos_++]);
            }
            if (vars_.index_of(name)) {
                base = Poly::variable(vars_, field_, name);
            } else if (name == "t" && field_.kind() == FieldKind::QuotientExtension) {
                base = Poly::constant(vars_, FieldElem::generator(field_));
            } else {
                throw ParseError(Errc::UnknownVariable, start, "unknown variable '" + name + "'");
            }
        } else if (c == '(') {
            kind = Kind::Group;
            ++pos_;
            base = expr();
            if (!accept(')')) {
                fail("expected ')'");
            }
        } else {
            fail(c == '\0' ? "unexpected end of input" : "unexpected '" + std::string(1, c) + "'");
        }
        if (!accept('^')) {
            return base;
        }
        const bool neg = accept('-');
        const std::size_t at = pos_;
        const mpz_class e = integer();
        if (!e.fits_sint_p() || e > std::numeric_limits<Exponent>::max()) {
            throw ParseError(Errc::ExponentOverflow, at, "exponent too large");
        }
        long k = e.get_si();
        if (!neg) {
            return base.pow(k);
        }
        const bool laurent_var = kind == Kind::Variable && vars_.index_of(name) && opts_.laurent.count(name);
        const bool unit_constant = kind != Kind::Variable && base.is_constant() && !base.is_zero();
        const bool generator = kind == Kind::Variable && !vars_.index_of(name);
        if (!laurent_var && !unit_constant && !generator) {
            throw ParseError(Errc::NegativeExponentNotAllowed, start,
                             "negative exponent on '" + std::string(src_.substr(start, at - start - 2)) + "'");
        }
        return base.pow(-k);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    Vars vars_;
    Field field_;
    const ParseOptions &opts_;
};

} // namespace detail

inline Poly parse(std::string_view src, Vars vars, Field field = Field::rationals(), const ParseOptions &opts = {})
{
    return detail::Parser(src, vars, field, opts).parse();
}

inline Poly parse(std::string_view src, const Ring &ring, const ParseOptions &opts = {})
{
    return parse(src, ring.vars, ring.field, opts);
}

// Canonical text of p: terms in descending graded-lex order; inside a term
// the positive powers come first, then the negative ones, each in table order.
inline std::string print_canonical(const Poly &p)
{
    if (p.is_zero()) {
        return "0";
    }
    const auto &names = p.vars().names();
    std::ostringstream os;
    bool first = true;
    for (const auto &[m, c] : p.terms()) {
        std::vector<std::string> factors;
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t i = 0; i < names.size(); ++i) {
                const Exponent e = m[i];
                if ((pass == 0 && e <= 0) || (pass == 1 && e >= 0)) {
                    continue;
                }
                factors.push_back(e == 1 ? names[i] : names[i] + "^" + std::to_string(e));
            }
        }
        const bool negative = c.prints_negative();
        const FieldElem mag = negative ? -c : c;
        if (first) {
            os << (negative ? "-" : "");
        } else {
            os << (negative ? " - " : " + ");
        }
        std::string coeff;
        if (!mag.is_one() || factors.empty()) {
            coeff = mag.str();
            if (mag.is_compound() && (p.size() > 1 || !factors.empty())) {
                coeff = "(" + coeff + ")";
            }
        }
        bool need_star = false;
        if (!coeff.empty()) {
            os << coeff;
            need_star = true;
        }
        for (const auto &f : factors) {
            os << (need_star ? "*" : "") << f;
            need_star = true;
        }
        first = false;
    }
    return os.str();
}

inline std::ostream &operator<<(std::ostream &os, const Poly &p) { return os << print_canonical(p); }

// Variables occurring in src, ordered by the reference order (a, b, x, y, z,
// u, v, w, then t). Used to pick a table when the caller has none.
inline std::vector<std::string> scan_identifiers(std::string_view src)
{
    std::set<std::string> found;
    for (std::size_t i = 0; i < src.size();) {
        if (std::isalpha(static_cast<unsigned char>(src[i])) || src[i] == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
                ++j;
            }
            found.insert(std::string(src.substr(i, j - i)));
            i = j;
        } else {
            ++i;
        }
    }
    static const std::vector<std::string> order{"a", "b", "x", "y", "z", "u", "v", "w", "t"};
    std::vector<std::string> out;
    for (const auto &n : order) {
        if (found.erase(n)) {
            out.push_back(n);
        }
    }
    out.insert(out.end(), found.begin(), found.end());
    return out;
}

// Field from its short name: "q", "fp:<p>" or "ext:<m(t)>". In the minimal
// polynomial a coefficient may be juxtaposed with t, as in "5t^2-1".
inline Field parse_field(std::string_view spec)
{
    if (spec == "q" || spec == "Q") {
        return Field::rationals();
    }
    if (spec.substr(0, 3) == "fp:") {
        const std::string digits(spec.substr(3));
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 19) {
            throw Error(Errc::InvalidField, "bad modulus in field '" + std::string(spec) + "'");
        }
        return Field::prime(std::stoull(digits));
    }
    if (spec.substr(0, 4) == "ext:") {
        std::string src;
        for (std::size_t i = 4; i < spec.size(); ++i) {
            if (i > 4 && std::isdigit(static_cast<unsigned char>(spec[i - 1])) && spec[i] == 't') {
                src += '*';
            }
            src += spec[i];
        }
        const Vars t = Vars::of({"t"});
        std::vector<mpq_class> coeffs;
        for (const auto &c : univariate_coefficients(parse(src, t, Field::rationals(), ParseOptions{{}}), "t")) {
            coeffs.push_back(c.scalar());
        }
        return Field::extension(std::move(coeffs));
    }
    throw Error(Errc::InvalidField, "unknown field '" + std::string(spec) + "' (expected q, fp:<p> or ext:<poly in t>)");
}

} // namespace bivar
