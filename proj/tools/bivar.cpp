// Command-line front end.
//
//   bivar transition --P "z^2" --n 1 --m 3
//   bivar verify ex48 --format json
//   bivar classify --f "x^2*a^-1*b^-1"
//
// Exit status: 0 when every check passes, 1 when a check fails, 2 on usage
// or parse errors.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bivar/a1equiv.hpp"
#include "bivar/bivariable.hpp"
#include "bivar/bundles.hpp"
#include "bivar/expr.hpp"
#include "bivar/io.hpp"
#include "bivar/suite.hpp"
#include "bivar/venereau.hpp"

namespace {

using namespace bivar;
using json = nlohmann::ordered_json;

struct Global {
    std::string field = "q";
    std::string format = "text";
    std::string out;
    bool field_given = false;
};

// Thrown for bad user input; maps to exit status 2.
struct Usage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Field field_of(const Global &g) { return parse_field(g.field); }

Poly expr(const std::string &src, Vars vars, Field field, const std::string &flag)
{
    try {
        return parse(src, vars, field);
    } catch (const ParseError &e) {
        throw Usage(flag + ": " + e.what() + "\n  " + src + "\n  " + std::string(e.position(), ' ') + "^");
    }
}

void text_report(std::ostream &os, const VerificationReport &r)
{
    os << "[" << r.status() << "] " << r.check_id << " (" << std::fixed << std::setprecision(1) << r.millis << " ms)\n";
    for (const auto &[k, v] : r.inputs) {
        os << "  input " << k << (v.empty() ? "" : " = " + v) << "\n";
    }
    for (const auto &s : r.steps) {
        os << "  " << (s.ok ? "ok   " : "FAIL ") << s.name << "\n";
        if (!s.ok && !s.residual.empty()) {
            os << "       residual: " << s.residual << "\n";
        }
    }
    if (r.error) {
        os << "  error " << r.error_message << "\n";
    }
    for (const auto &[k, v] : r.witness) {
        os << "  " << k << " = " << v << "\n";
    }
}

class Output {
public:
    explicit Output(const Global &g) : g_(g) {}

    std::ostream &stream() { return buf_; }
    bool json() const { return g_.format == "json"; }

    void reports(const std::vector<VerificationReport> &rs, const Field &field)
    {
        if (json()) {
            buf_ << to_json(rs, field).dump(2) << "\n";
            return;
        }
        std::size_t passed = 0;
        for (const auto &r : rs) {
            text_report(buf_, r);
            passed += r.passed();
        }
        if (rs.size() > 1) {
            buf_ << passed << "/" << rs.size() << " checks passed\n";
        }
    }

    void flush()
    {
        if (g_.out.empty()) {
            std::cout << buf_.str();
            return;
        }
        std::ofstream f(g_.out);
        if (!f) {
            throw Usage("cannot write " + g_.out);
        }
        f << buf_.str();
    }

private:
    const Global &g_;
    std::ostringstream buf_;
};

int status_of(const std::vector<VerificationReport> &rs)
{
    for (const auto &r : rs) {
        if (!r.passed()) {
            return 1;
        }
    }
    return 0;
}

std::vector<FieldElem> parse_pool(const std::string &csv, const Field &field)
{
    std::vector<FieldElem> pool;
    std::stringstream ss(csv);
    std::string item;
    const Vars none = Vars::of({"x"});
    while (std::getline(ss, item, ',')) {
        const Poly c = expr(item, none, field, "--pool");
        if (c.involves("x")) {
            throw Usage("--pool: entries must be constants, got '" + item + "'");
        }
        pool.push_back(c.is_zero() ? FieldElem(field) : c.terms().front().second);
    }
    if (pool.empty()) {
        throw Usage("--pool must not be empty");
    }
    return pool;
}

json cert_document(const BivariableCert &c, const VerificationReport &r)
{
    json j;
    j["version"] = kReportVersion;
    j["field"] = c.omega.field().name();
    j["certificate"] = to_json(c);
    j["checks"] = json::array({to_json(r)});
    return j;
}

BivariableCert read_cert(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw Usage("cannot read " + path);
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error &e) {
        throw Usage(path + ": " + e.what());
    }
    return cert_from_json(j.contains("certificate") ? j["certificate"] : j);
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Transition functions, bivariables and A^2-bundle checks"};
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_option("--field", g.field, "q, fp:<p> or ext:<minimal polynomial in t>")->each([&](const std::string &) { g.field_given = true; });
    app.add_option("--format", g.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--out", g.out, "write output to this file");

    std::string P, f, gexpr, fb, gb, Q, pool, cert_path, side = "a", example;
    int n = 0, m = 0, deg = 1;
    VerifyParams vp;
    std::string id;

    auto *transition = app.add_subcommand("transition", "transition function of v_{P,n}");
    transition->add_option("--P", P, "polynomial in z")->required();
    transition->add_option("--n", n)->required()->check(CLI::PositiveNumber);
    auto *m_opt = transition->add_option("--m", m)->check(CLI::PositiveNumber);

    auto *verify = app.add_subcommand("verify", "run a named check, or all of them");
    verify->add_option("id", id)->required()->check(CLI::IsMember([] {
        auto ids = verify_ids();
        ids.push_back("all");
        return ids;
    }()));
    std::string vP;
    int vn = 0, vm = 0;
    auto *vP_opt = verify->add_option("--P", vP, "polynomial parameter (in z, or in a, b for ex312)");
    auto *vn_opt = verify->add_option("--n", vn)->check(CLI::PositiveNumber);
    auto *vm_opt = verify->add_option("--m", vm)->check(CLI::PositiveNumber);
    verify->add_option("--s-max", vp.s_max, "search bound for prop22")->check(CLI::PositiveNumber);

    auto *a1 = app.add_subcommand("a1equiv", "A^1-bundle equivalence of two transition functions");
    a1->add_option("--f", f)->required();
    a1->add_option("--g", gexpr)->required();

    auto *p45 = app.add_subcommand("prop45", "congruence test g_b(x + aQ(f_b)) = f_b mod a^m with witnesses");
    auto *s45 = app.add_subcommand("search45", "search Q over a coefficient pool");
    for (auto *c : {p45, s45}) {
        c->add_option("--fb", fb)->required();
        c->add_option("--gb", gb)->required();
        c->add_option("--m", m)->required()->check(CLI::PositiveNumber);
    }
    p45->add_option("--Q", Q)->required();
    s45->add_option("--deg", deg)->required()->check(CLI::NonNegativeNumber);
    s45->add_option("--pool", pool, "comma-separated constants")->required();

    auto *cls = app.add_subcommand("classify", "triviality of rho_f for small denominators");
    cls->add_option("--f", f)->required();

    auto *biv = app.add_subcommand("bivar", "bivariable certificates");
    biv->require_subcommand(1);
    auto *ext = biv->add_subcommand("extend", "extend a certificate on side a or b");
    ext->add_option("--cert", cert_path)->required();
    ext->add_option("--side", side)->required()->check(CLI::IsMember({"a", "b"}));
    ext->add_option("--m", m)->required()->check(CLI::PositiveNumber);
    ext->add_option("--n", n)->required()->check(CLI::PositiveNumber);
    ext->add_option("--Q", Q, "polynomial in x over k[a,b]")->required();
    auto *make = biv->add_subcommand("make", "write one of the example certificates");
    make->add_option("--example", example)->required()->check(CLI::IsMember({"ex35", "ex312", "ex43", "ex66"}));
    make->add_option("--m", m)->check(CLI::PositiveNumber);
    make->add_option("--n", n)->check(CLI::PositiveNumber);
    make->add_option("--P", P);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const Field field = field_of(g);
        Output out(g);
        int status = 0;

        if (*transition) {
            const FibrationSpec spec(expr(P, Vars::of({"z"}), field, "--P"), n);
            const int mm = *m_opt ? m : smallest_m(spec);
            const TransitionFunction t = transition_function(spec, mm);
            if (out.json()) {
                json j;
                j["version"] = kReportVersion;
                j["field"] = field.name();
                j["P"] = print_canonical(spec.as_poly(Vars::of({"z"})));
                j["n"] = n;
                j["m"] = mm;
                j["f"] = print_canonical(t.f);
                j["m_min"] = t.m_min;
                j["n_min"] = t.n_min;
                j["P_num"] = print_canonical(t.P_num);
                out.stream() << j.dump(2) << "\n";
            } else {
                out.stream() << print_canonical(t.f) << "\n";
            }
        } else if (*verify) {
            if (g.field_given) {
                vp.field = field;
            }
            if (*vP_opt) {
                vp.P = vP;
            }
            if (*vn_opt) {
                vp.n = vn;
            }
            if (*vm_opt) {
                vp.m = vm;
            }
            const std::vector<VerificationReport> rs = id == "all" ? verify_all(vp) : std::vector{run_verify(id, vp)};
            out.reports(rs, field);
            status = status_of(rs);
        } else if (*a1) {
            const Poly pf = expr(f, transition_vars(), field, "--f");
            const Poly pg = expr(gexpr, transition_vars(), field, "--g");
            const VerificationReport r = run_report("a1equiv", [&](VerificationReport &rep) {
                rep.input("f", pf);
                rep.input("g", pg);
                const auto w = a1_equiv(pf, pg);
                if (!rep.check("doubly-negative parts proportional", w.has_value(),
                               print_canonical(split_negative_parts(pg).doubly_negative))) {
                    return;
                }
                rep.check_equal("g = lambda f + r_a + r_b", pg, Poly::constant(pf.vars(), w->lambda) * pf + w->r_a + w->r_b);
                rep.check("r_a in k[a^-1,b][x]", in_ring(w->r_a, RingDescriptor::laurent({"a"})));
                rep.check("r_b in k[a,b^-1][x]", in_ring(w->r_b, RingDescriptor::laurent({"b"})));
                rep.witness.emplace_back("lambda", w->lambda.str());
                rep.witness_expr("r_a", w->r_a);
                rep.witness_expr("r_b", w->r_b);
            });
            out.reports({r}, field);
            status = status_of({r});
        } else if (*p45) {
            const VerificationReport r = prop45_check(expr(fb, transition_vars(), field, "--fb"), expr(gb, transition_vars(), field, "--gb"), m,
                                                      expr(Q, transition_vars(), field, "--Q"));
            out.reports({r}, field);
            status = status_of({r});
        } else if (*s45) {
            const Poly pfb = expr(fb, transition_vars(), field, "--fb");
            const Poly pgb = expr(gb, transition_vars(), field, "--gb");
            const Prop45Search s = prop45_search(pfb, pgb, m, deg, parse_pool(pool, field));
            if (out.json()) {
                json j;
                j["version"] = kReportVersion;
                j["field"] = field.name();
                j["candidates"] = s.candidates;
                j["survivors"] = s.survivors;
                j["Q"] = s.Q ? json(print_canonical(*s.Q)) : json(nullptr);
                out.stream() << j.dump(2) << "\n";
            } else {
                out.stream() << "candidates: " << s.candidates << "\n";
                for (std::size_t k = 0; k < s.survivors.size(); ++k) {
                    out.stream() << "after mod a^" << k + 1 << ": " << s.survivors[k] << "\n";
                }
                out.stream() << (s.Q ? "Q = " + print_canonical(*s.Q) : std::string("no Q found")) << "\n";
            }
            status = s.Q ? 0 : 1;
        } else if (*cls) {
            const TransitionFunction t(expr(f, transition_vars(), field, "--f"));
            const TrivialityVerdict v = classify(t);
            const bool ok = v.reverify();
            if (out.json()) {
                json j;
                j["version"] = kReportVersion;
                j["field"] = field.name();
                j["f"] = print_canonical(t.f);
                j["m_min"] = t.m_min;
                j["n_min"] = t.n_min;
                j["P_num"] = print_canonical(t.P_num);
                j["verdict"] = v.str();
                j["witness_verified"] = ok;
                if (v.cert) {
                    j["certificate"] = to_json(*v.cert);
                }
                if (v.variable_word) {
                    j["variable_word"] = to_json(*v.variable_word);
                }
                out.stream() << j.dump(2) << "\n";
            } else {
                out.stream() << v.str() << "\n";
            }
            status = ok ? 0 : 1;
        } else if (*ext) {
            const BivariableCert c = read_cert(cert_path);
            const Poly q = expr(Q, bivariable_vars(), c.omega.field(), "--Q");
            const BivariableCert e = side == "a" ? extend_a(c, m, n, q) : extend_b(c, m, n, q);
            const VerificationReport r = verify_cert(e, "extend");
            if (out.json()) {
                out.stream() << cert_document(e, r).dump(2) << "\n";
            } else {
                out.stream() << "omega = " << print_canonical(e.omega) << "\nf = " << print_canonical(e.f.f) << "\n";
                text_report(out.stream(), r);
            }
            status = r.passed() ? 0 : 1;
        } else if (*make) {
            const Ring R(bivariable_vars(), field);
            BivariableCert c = [&] {
                if (example == "ex35") {
                    return linear_bivariable(m ? m : 1, n ? n : 1, R.zero());
                }
                if (example == "ex312") {
                    return linear_bivariable(m ? m : 1, n ? n : 1, expr(P.empty() ? "a*b + 3" : P, bivariable_vars(), field, "--P"));
                }
                if (example == "ex43") {
                    return example43(FibrationSpec(expr(P.empty() ? "z^2" : P, Vars::of({"z"}), field, "--P"), 2));
                }
                return example66(field);
            }();
            const VerificationReport r = verify_cert(c, example);
            if (out.json()) {
                out.stream() << cert_document(c, r).dump(2) << "\n";
            } else {
                out.stream() << "omega = " << print_canonical(c.omega) << "\nf = " << print_canonical(c.f.f) << "\n";
                text_report(out.stream(), r);
            }
            status = r.passed() ? 0 : 1;
        }
        out.flush();
        return status;
    } catch (const Usage &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
