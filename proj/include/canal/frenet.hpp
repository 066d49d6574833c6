#pragma once

#include <functional>
#include <string>
#include <variant>

#include "canal/common.hpp"
#include "canal/vec3.hpp"

namespace canal {

/// Frenet frame plus the scalar apparatus at one arc-length parameter.
/// tau_prime is needed only by the second s-derivative of the surface
/// parametrization; it is identically zero for every built-in family.
struct FrenetData {
    Vec3 T, N, B;
    double kappa = 0.0;
    double kappa_prime = 0.0;
    double tau = 0.0;
    double tau_prime = 0.0;
};

struct Interval {
    double lo = -1e9;
    double hi = 1e9;
    bool contains(double s, double slack = 0.0) const { return s >= lo - slack && s <= hi + slack; }
};

/// A user-supplied unit-speed curve. Both callbacks must be consistent;
/// validate_unit_speed() provides the check.
struct CustomCurve {
    std::function<Vec3(double)> position;
    std::function<FrenetData(double)> frenet;
};

/// Unit-speed center curves. Built-in families carry exact Frenet data:
///   line        alpha(s) = (s,0,0), constant frame (e1,e2,e3), kappa = tau = 0
///   circle(a)   kappa = 1/a, tau = 0
///   helix(a,b)  kappa = a/(a^2+b^2), tau = b/(a^2+b^2)
class CenterCurve {
public:
    enum class Kind { line, circle, helix, custom };

    static CenterCurve line();
    static CenterCurve circle(double radius);
    static CenterCurve helix(double a, double b);
    static CenterCurve custom(CustomCurve curve, Interval interval);

    Vec3 position(double s) const;
    FrenetData frenet(double s) const;

    Kind kind() const { return kind_; }
    bool is_line() const { return kind_ == Kind::line; }
    const Interval& interval() const { return interval_; }

private:
    CenterCurve() = default;
    void check_domain(double s) const;

    Kind kind_ = Kind::line;
    double p0_ = 0.0, p1_ = 0.0;  // circle radius / helix (a,b)
    CustomCurve custom_;
    Interval interval_;
};

/// Frame + curvature/torsion at s. Errors if s leaves the curve's interval.
FrenetData curve_eval(const CenterCurve& curve, double s);

struct UnitSpeedReport {
    bool ok = true;
    double worst_s = 0.0;
    double worst_deviation = 0.0;  // max | |alpha'(s)| - 1 |
};

/// Samples |alpha'(s)| over [lo, hi] by high-order differencing of position().
UnitSpeedReport validate_unit_speed(const CenterCurve& curve, double lo, double hi,
                                    int samples, double tol);

}  // namespace canal
