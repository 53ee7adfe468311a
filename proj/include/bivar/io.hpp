#pragma once

// JSON forms of reports, words and bivariable certificates.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bivar/bivariable.hpp"
#include "bivar/error.hpp"
#include "bivar/expr.hpp"
#include "bivar/polymap.hpp"
#include "bivar/report.hpp"

namespace bivar {

inline constexpr int kReportVersion = 1;

inline nlohmann::ordered_json to_json(const VerificationReport &r)
{
    nlohmann::ordered_json j;
    j["check_id"] = r.check_id;
    auto &in = j["inputs"] = nlohmann::ordered_json::object();
    for (const auto &[k, v] : r.inputs) {
        in[k] = v;
    }
    j["status"] = r.status();
    auto &res = j["residuals"] = nlohmann::ordered_json::object();
    for (const auto &s : r.steps) {
        if (!s.ok) {
            res[s.name] = s.residual;
        }
    }
    auto &steps = j["steps"] = nlohmann::ordered_json::array();
    for (const auto &s : r.steps) {
        steps.push_back({{"name", s.name}, {"ok", s.ok}});
    }
    auto &w = j["witness"] = nlohmann::ordered_json::object();
    for (const auto &[k, v] : r.witness) {
        w[k] = v;
    }
    if (r.error) {
        j["error"] = {{"code", errc_name(*r.error)}, {"message", r.error_message}};
    }
    j["millis"] = r.millis;
    return j;
}

inline nlohmann::ordered_json to_json(const std::vector<VerificationReport> &reports, const Field &field)
{
    nlohmann::ordered_json j;
    j["version"] = kReportVersion;
    j["field"] = field.name();
    auto &checks = j["checks"] = nlohmann::ordered_json::array();
    for (const auto &r : reports) {
        checks.push_back(to_json(r));
    }
    return j;
}

// ---------------------------------------------------------------------------
// Words

inline nlohmann::ordered_json to_json(const ElementaryMap &g)
{
    return std::visit(
        [](const auto &e) -> nlohmann::ordered_json {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, Triangular>) {
                return {{"type", "triangular"}, {"var", e.var}, {"shift", print_canonical(e.shift)}};
            } else if constexpr (std::is_same_v<T, Scale>) {
                return {{"type", "scale"}, {"var", e.var}, {"unit", print_canonical(e.unit)}};
            } else if constexpr (std::is_same_v<T, Permute>) {
                return {{"type", "permute"}, {"first", e.first}, {"second", e.second}};
            } else {
                return {{"type", "lemma41"}, {"x", e.x},          {"y", e.y},
                        {"a", print_canonical(e.a_elt)}, {"m", e.m},   {"Q", print_canonical(e.Q)},
                        {"f", print_canonical(e.f)},     {"g", print_canonical(e.g)}, {"inverse", e.inverse}};
            }
        },
        g);
}

inline nlohmann::ordered_json to_json(const MapWord &w)
{
    nlohmann::ordered_json j;
    j["vars"] = w.vars().names();
    j["base"] = w.base();
    auto &gens = j["word"] = nlohmann::ordered_json::array();
    for (const auto &g : w.word()) {
        gens.push_back(to_json(g));
    }
    return j;
}

namespace detail {

template <class J>
const J &field_of(const J &j, const char *key)
{
    if (!j.is_object() || !j.contains(key)) {
        throw Error(Errc::InvalidArgument, std::string("missing key '") + key + "'");
    }
    return j.at(key);
}

template <class J>
std::string string_of(const J &j, const char *key)
{
    const auto &v = field_of(j, key);
    if (!v.is_string()) {
        throw Error(Errc::InvalidArgument, std::string("key '") + key + "' must be a string");
    }
    return v.template get<std::string>();
}

} // namespace detail

template <class J>
ElementaryMap generator_from_json(const J &j, Vars vars, Field field)
{
    const ParseOptions opts = ParseOptions::allowing({"x"});
    auto expr = [&](const char *key) { return parse(detail::string_of(j, key), vars, field, opts); };
    const std::string type = detail::string_of(j, "type");
    if (type == "triangular") {
        return Triangular{detail::string_of(j, "var"), expr("shift")};
    }
    if (type == "scale") {
        return Scale{detail::string_of(j, "var"), expr("unit")};
    }
    if (type == "permute") {
        return Permute{detail::string_of(j, "first"), detail::string_of(j, "second")};
    }
    if (type == "lemma41") {
        const auto &m = detail::field_of(j, "m");
        if (!m.is_number_integer()) {
            throw Error(Errc::InvalidArgument, "key 'm' must be an integer");
        }
        const auto &inv = detail::field_of(j, "inverse");
        if (!inv.is_boolean()) {
            throw Error(Errc::InvalidArgument, "key 'inverse' must be a boolean");
        }
        return Lemma41Block{detail::string_of(j, "x"), detail::string_of(j, "y"), expr("a"), m.template get<int>(),
                            expr("Q"), expr("f"), expr("g"), inv.template get<bool>()};
    }
    throw Error(Errc::InvalidArgument, "unknown generator type '" + type + "'");
}

template <class J>
MapWord word_from_json(const J &j, Field field)
{
    const auto &names = detail::field_of(j, "vars");
    const auto &base = detail::field_of(j, "base");
    const auto &gens = detail::field_of(j, "word");
    if (!names.is_array() || !base.is_array() || !gens.is_array()) {
        throw Error(Errc::InvalidArgument, "word must have array keys vars, base, word");
    }
    MapWord w(Vars::of(names.template get<std::vector<std::string>>()), field, base.template get<std::set<std::string>>());
    for (const auto &g : gens) {
        w.then(generator_from_json(g, w.vars(), field));
    }
    return w;
}

// ---------------------------------------------------------------------------
// Certificates

inline nlohmann::ordered_json to_json(const BivariableCert &c)
{
    nlohmann::ordered_json j;
    j["field"] = c.omega.field().name();
    j["omega"] = print_canonical(c.omega);
    j["f"] = print_canonical(c.f.f);
    j["alpha"] = to_json(c.alpha);
    j["beta"] = to_json(c.beta);
    return j;
}

// Reads a certificate and re-certifies it; the stored f is only compared.
template <class J>
BivariableCert cert_from_json(const J &j)
{
    const Field field = parse_field(detail::string_of(j, "field"));
    const Poly omega = parse(detail::string_of(j, "omega"), bivariable_vars(), field);
    BivariableCert c = certify(omega, word_from_json(detail::field_of(j, "alpha"), field), word_from_json(detail::field_of(j, "beta"), field));
    if (j.contains("f")) {
        const Poly f = parse(detail::string_of(j, "f"), transition_vars(), field);
        if (f != c.f.f) {
            throw Error(Errc::ShapeError, "stored f " + print_canonical(f) + " differs from the certified " + print_canonical(c.f.f));
        }
    }
    return c;
}

} // namespace bivar
