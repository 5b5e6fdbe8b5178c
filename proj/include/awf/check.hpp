#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "awf/scalar.hpp"

namespace awf {

/// Outcome of one verification check.
struct CheckRecord {
    std::string name;
    nlohmann::json inputs = nlohmann::json::object();
    Complex lhs{};
    Complex rhs{};
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    /// "pass", "fail", or "precision-failure"
    std::string outcome = "fail";
    std::optional<std::string> exact_lhs;
    std::optional<std::string> exact_rhs;
};

struct CheckReport {
    std::string name;
    std::vector<CheckRecord> records;
    std::optional<std::uint64_t> seed;

    bool pass() const
    {
        for (const auto& r : records)
            if (!r.pass)
                return false;
        return true;
    }
    std::size_t failures() const
    {
        std::size_t n = 0;
        for (const auto& r : records)
            n += r.pass ? 0 : 1;
        return n;
    }
    void append(const CheckReport& other)
    {
        records.insert(records.end(), other.records.begin(), other.records.end());
    }
};

inline Complex numeric(const Complex& v, double /*q*/) { return v; }
inline Complex numeric(const QFunction& v, double q) { return v.eval(q); }

inline std::optional<std::string> exact_string(const Complex&) { return std::nullopt; }
inline std::optional<std::string> exact_string(const QFunction& v) { return v.str(); }

/// Exact scalars compare exactly; floating scalars within `tol`.
inline bool agrees(const Complex& a, const Complex& b, double tol) { return std::abs(a - b) <= tol; }
inline bool agrees(const QFunction& a, const QFunction& b, double /*tol*/) { return a == b; }

/// Record comparing lhs and rhs.
template <class Scalar>
CheckRecord compare(std::string name, const Scalar& lhs, const Scalar& rhs, double tol, double q,
                    nlohmann::json inputs = nlohmann::json::object())
{
    CheckRecord r;
    r.name = std::move(name);
    r.inputs = std::move(inputs);
    r.lhs = numeric(lhs, q);
    r.rhs = numeric(rhs, q);
    r.residual = std::abs(r.lhs - r.rhs);
    r.tolerance = tol;
    r.pass = agrees(lhs, rhs, tol);
    r.outcome = r.pass ? "pass" : "fail";
    r.exact_lhs = exact_string(lhs);
    r.exact_rhs = exact_string(rhs);
    return r;
}

/// Record for a residual that must not exceed `tol`.
inline CheckRecord bound(std::string name, double residual, double tol,
                         nlohmann::json inputs = nlohmann::json::object())
{
    CheckRecord r;
    r.name = std::move(name);
    r.inputs = std::move(inputs);
    r.lhs = residual;
    r.rhs = 0.0;
    r.residual = residual;
    r.tolerance = tol;
    r.pass = residual <= tol;
    r.outcome = r.pass ? "pass" : "fail";
    return r;
}

inline CheckRecord precision_failure(std::string name, const std::string& what, double tol,
                                     nlohmann::json inputs = nlohmann::json::object())
{
    CheckRecord r;
    r.name = std::move(name);
    r.inputs = std::move(inputs);
    r.inputs["error"] = what;
    r.residual = std::nan("");
    r.tolerance = tol;
    r.pass = false;
    r.outcome = "precision-failure";
    return r;
}

}  // namespace awf
