#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace canal {

enum class ErrorCode {
    domain_violation,
    degenerate_q,          // |r'| >= 1, Q vanishes, no surface
    nonpositive_radius,
    degenerate_first_form,
    degenerate_second_form,
    unit_speed_violation,
    rank_deficient_fit,
    invalid_spec,
    io_failure,
};

class CanalError : public std::runtime_error {
public:
    CanalError(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

/// Thresholds below which quotients of the curvature formulas are not evaluated.
struct Tolerances {
    double eps_deg = 1e-12;         // EG - F^2 degeneracy threshold
    double eps_ii = 1e-9;           // eg - f^2 threshold for K_II / H_II
    double eps_k = 1e-9;            // |K| threshold for H_II (log|K| term)
    double eps_structural = 1e-11;  // identically-zero numerator detection, relative to term scale
};

/// A real value that may be undefined for a stated reason (e.g. K_II where det II ~ 0).
/// Undefined values never leak NaN: value() throws, value_or() substitutes.
class UndefReal {
public:
    static UndefReal of(double v) { return UndefReal(v, {}); }
    static UndefReal undefined(std::string reason) {
        return UndefReal(std::nullopt, std::move(reason));
    }

    bool defined() const { return value_.has_value(); }
    double value() const {
        if (!value_)
            throw CanalError(ErrorCode::domain_violation, "undefined value used: " + reason_);
        return *value_;
    }
    double value_or(double fallback) const { return value_.value_or(fallback); }
    const std::string& reason() const { return reason_; }

private:
    UndefReal(std::optional<double> v, std::string reason)
        : value_(v), reason_(std::move(reason)) {}
    std::optional<double> value_;
    std::string reason_;
};

}  // namespace canal
