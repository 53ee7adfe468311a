#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bivar/error.hpp"
#include "bivar/expr.hpp"
#include "bivar/poly.hpp"

namespace bivar {

struct Step {
    std::string name;
    bool ok = false;
    std::string residual; // canonical text of what should have vanished
};

using NamedExprs = std::vector<std::pair<std::string, std::string>>;

class VerificationReport {
public:
    VerificationReport() = default;
    explicit VerificationReport(std::string id) : check_id(std::move(id)) {}

    std::string check_id;
    NamedExprs inputs;
    std::vector<Step> steps;
    NamedExprs witness;
    std::optional<Errc> error;
    std::string error_message;
    double millis = 0;

    void input(std::string name, const Poly &p) { inputs.emplace_back(std::move(name), print_canonical(p)); }
    void input(std::string name, std::string value) { inputs.emplace_back(std::move(name), std::move(value)); }
    void witness_expr(std::string name, const Poly &p) { witness.emplace_back(std::move(name), print_canonical(p)); }

    bool check(std::string name, bool ok, std::string residual = {})
    {
        steps.push_back({std::move(name), ok, ok ? std::string() : std::move(residual)});
        return ok;
    }

    // Passes iff residual is the zero polynomial.
    bool check_zero(std::string name, const Poly &residual)
    {
        return check(std::move(name), residual.is_zero(), print_canonical(residual));
    }

    bool check_equal(std::string name, const Poly &lhs, const Poly &rhs) { return check_zero(std::move(name), lhs - rhs); }

    bool passed() const
    {
        if (error || steps.empty()) {
            return false;
        }
        for (const auto &s : steps) {
            if (!s.ok) {
                return false;
            }
        }
        return true;
    }

    std::string status() const { return error ? "error" : passed() ? "pass" : "fail"; }

    const Step *first_failure() const
    {
        for (const auto &s : steps) {
            if (!s.ok) {
                return &s;
            }
        }
        return nullptr;
    }

    // Merges the steps of a sub-report, prefixing their names.
    void absorb(const std::string &prefix, const VerificationReport &sub)
    {
        for (const auto &s : sub.steps) {
            steps.push_back({prefix + s.name, s.ok, s.residual});
        }
        if (sub.error && !error) {
            error = sub.error;
            error_message = sub.error_message;
        }
    }
};

// Runs body on a fresh report, recording library errors and elapsed time.
inline VerificationReport run_report(std::string id, const std::function<void(VerificationReport &)> &body)
{
    VerificationReport r(std::move(id));
    const auto start = std::chrono::steady_clock::now();
    try {
        body(r);
    } catch (const Error &e) {
        r.error = e.code();
        r.error_message = e.what();
    }
    r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

} // namespace bivar
