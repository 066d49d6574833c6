#pragma once

#include <functional>

#include "canal/common.hpp"

namespace canal {

/// Radius r(s) with arc-length derivatives up to 4th order.
struct RadiusJet {
    double r = 0.0, r1 = 0.0, r2 = 0.0, r3 = 0.0, r4 = 0.0;
};

/// User-supplied radius. The jet must be analytic; see validate_radius_jets().
struct CustomRadius {
    std::function<RadiusJet(double)> jet;
};

/// Built-in radius families:
///   constant(c)             r = c
///   linear(c1,c2)           r = c1 s + c2
///   sqrt_quadratic(c1,c2)   r = sqrt(s^2 - 2 c1 s + 2 c2)
///   sinusoidal(p,q,w)       r = p + q sin(w s)
class RadiusFamily {
public:
    enum class Kind { constant, linear, sqrt_quadratic, sinusoidal, custom };

    static RadiusFamily constant(double c);
    static RadiusFamily linear(double c1, double c2);
    static RadiusFamily sqrt_quadratic(double c1, double c2);
    static RadiusFamily sinusoidal(double offset, double amplitude, double omega);
    static RadiusFamily custom(CustomRadius radius);

    /// Jet at s. Errors on nonpositive radius or a domain violation
    /// (sqrt_quadratic needs s^2 - 2 c1 s + 2 c2 > 0).
    RadiusJet eval(double s) const;

    Kind kind() const { return kind_; }
    double param(int i) const { return i == 0 ? p0_ : (i == 1 ? p1_ : p2_); }

private:
    RadiusFamily() = default;
    Kind kind_ = Kind::constant;
    double p0_ = 1.0, p1_ = 0.0, p2_ = 0.0;
    CustomRadius custom_;
};

RadiusJet radius_eval(const RadiusFamily& radius, double s);

/// Offsets of the characteristic circle of the sphere family:
/// R = r r' is the displacement along the tangent, Q = sign * r sqrt(1 - r'^2)
/// its radius in the normal plane. Derivatives follow from Q^2 = r^2 - R^2,
/// so R^2 + Q^2 = r^2 holds by construction.
struct RQJet {
    double R = 0.0, R1 = 0.0, R2 = 0.0, R3 = 0.0;
    double Q = 0.0, Q1 = 0.0, Q2 = 0.0, Q3 = 0.0;
};

/// Errors with degenerate_q when |r'| >= 1 (Q = 0 admits no surface).
RQJet rq_jet(const RadiusJet& jet, int q_sign = +1);

struct JetCheckReport {
    bool ok = true;
    double worst_rel = 0.0;
    double worst_s = 0.0;
    int worst_order = 0;
};

/// Self-consistency: analytic jet orders 1..4 against Richardson-extrapolated
/// central differences of r over [lo, hi].
JetCheckReport validate_radius_jets(const RadiusFamily& radius, double lo, double hi,
                                    int samples, double tol);

}  // namespace canal
