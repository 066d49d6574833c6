#pragma once

// Test-only oracles, independent of the library's computation paths.

#include <cmath>

#include "canal/frenet.hpp"
#include "canal/surface.hpp"
#include "canal/vec3.hpp"

namespace testsupport {

// Constant-radius tube around a curve with constant kappa, tau: the second
// form is e = -(q k^2 c^2 + k c + q tau^2), f = q tau, g = -q with c = cos t.
// K_II follows from the determinant formula with only e_t, e_tt nonzero.
inline double tube_kii(double q, double kappa, double tau, double t) {
    const double c = std::cos(t), st = std::sin(t);
    const double e = -(q * kappa * kappa * c * c + kappa * c + q * tau * tau);
    const double f = q * tau;
    const double g = -q;
    const double e_t = (2 * q * kappa * kappa * c + kappa) * st;
    const double e_tt = (2 * q * kappa * kappa * c + kappa) * c - 2 * q * kappa * kappa * st * st;
    const double det2 = e * g - f * f;
    return (-0.5 * e_tt * det2 + 0.25 * e_t * e_t * g) / (det2 * det2);
}

// H_II for the same tube on the cos t > 0 branch, from the divergence of the
// log-curvature gradient worked out by hand: with a = q kappa, u = c(1+ac),
// N = a u,
//   H_II = -(1+2ac)/(2q(1+ac))
//          - a^2 [2cu(k u + q tau^2) + (1-c^2)(1+2ac)(k u + 3 q tau^2)]/(8 N^3).
inline double tube_hii(double q, double kappa, double tau, double t) {
    const double c = std::cos(t);
    const double a = q * kappa;
    const double u = c * (1 + a * c);
    const double N = a * u;
    const double H = -(1 + 2 * a * c) / (2 * q * (1 + a * c));
    const double P = 2 * c * u * (kappa * u + q * tau * tau) +
                     (1 - c * c) * (1 + 2 * a * c) * (kappa * u + 3 * q * tau * tau);
    return H - a * a * P / (8 * N * N * N);
}

// curvature/torsion from position samples only
inline void fd_frenet(const canal::CenterCurve& curve, double s, double* kappa, double* tau) {
    using canal::Vec3;
    const double h = 1e-3 * std::max(1.0, std::abs(s));
    auto P = [&](double x) { return curve.position(x); };
    auto deriv = [&](int order, double hh) {
        switch (order) {
            case 1:
                return (P(s - 2 * hh) - 8.0 * P(s - hh) + 8.0 * P(s + hh) - P(s + 2 * hh)) /
                       (12.0 * hh);
            case 2:
                return (-P(s - 2 * hh) + 16.0 * P(s - hh) - 30.0 * P(s) + 16.0 * P(s + hh) -
                        P(s + 2 * hh)) /
                       (12.0 * hh * hh);
            default:
                return (P(s + 2 * hh) - 2.0 * P(s + hh) + 2.0 * P(s - hh) - P(s - 2 * hh)) /
                       (2.0 * hh * hh * hh);
        }
    };
    auto rich = [&](int order, double w) {
        const Vec3 coarse = deriv(order, h), fine = deriv(order, h / 2);
        return (w * fine - coarse) / (w - 1.0);
    };
    const Vec3 d1 = rich(1, 16.0), d2 = rich(2, 16.0), d3 = rich(3, 4.0);
    const Vec3 cr = d1.cross(d2);
    *kappa = cr.norm() / std::pow(d1.norm(), 3);
    *tau = cr.dot(d3) / cr.dot(cr);
}

inline canal::CanalSurface cylinder(double r = 1.0) {
    return canal::CanalSurface::make(canal::CenterCurve::line(),
                                     canal::RadiusFamily::constant(r), +1, 0.0, 4.0);
}

inline canal::CanalSurface cone() {
    return canal::CanalSurface::make(canal::CenterCurve::line(),
                                     canal::RadiusFamily::linear(0.5, 1.0), +1, 0.0, 4.0);
}

inline canal::CanalSurface torus() {
    return canal::CanalSurface::make(canal::CenterCurve::circle(3.0),
                                     canal::RadiusFamily::constant(1.0), +1, 0.0,
                                     2.0 * 3.14159265358979323846);
}

inline canal::CanalSurface helix_tube() {
    return canal::CanalSurface::make(canal::CenterCurve::helix(2.0, 1.0),
                                     canal::RadiusFamily::constant(0.5), +1, 0.0,
                                     2.0 * 3.14159265358979323846);
}

inline canal::CanalSurface sphere_family() {
    return canal::CanalSurface{canal::CenterCurve::line(),
                               canal::RadiusFamily::sqrt_quadratic(0.0, 0.5), +1, 0.1, 2.0};
}

}  // namespace testsupport
