#pragma once

#include "canal/common.hpp"
#include "canal/frenet.hpp"
#include "canal/radius.hpp"
#include "canal/vec3.hpp"

namespace canal {

/// A canal surface C(s,t) = alpha(s) - R T - Q cos(t) N + Q sin(t) B
/// over [s_min, s_max] x [0, 2pi). t is treated as 2pi-periodic.
///
/// The aggregate itself carries no validity guarantee so that degenerate
/// configurations can still be diagnosed (degeneracy_check, classify).
/// make() is the checked construction path: it rejects |r'| >= 1 and r <= 0
/// on the s-domain, and custom curves that are not unit speed.
struct CanalSurface {
    CenterCurve curve = CenterCurve::line();
    RadiusFamily radius = RadiusFamily::constant(1.0);
    int q_sign = +1;
    double s_min = 0.0;
    double s_max = 1.0;

    static CanalSurface make(CenterCurve curve, RadiusFamily radius, int q_sign,
                             double s_min, double s_max);
    /// Throws degenerate_q / nonpositive_radius / unit_speed_violation.
    void validate(int samples = 257) const;
};

struct FirstForm {
    double E = 0.0, F = 0.0, G = 0.0;
};
struct SecondForm {
    double e = 0.0, f = 0.0, g = 0.0;
};

/// All six coefficients plus the two determinants (area2 = EG - F^2 as the
/// literal product, det2 = eg - f^2).
struct FormCoefficients {
    double E = 0.0, F = 0.0, G = 0.0;
    double e = 0.0, f = 0.0, g = 0.0;
    double area2 = 0.0;
    double det2 = 0.0;
};

struct SurfacePartials {
    Vec3 C_s, C_t, C_ss, C_st, C_tt;
};

Vec3 surface_point(const CanalSurface& M, double s, double t);

/// Exact partial derivatives of the parametrization (via the Frenet-Serret
/// equations). C_t = Q sin t N + Q cos t B and C_tt = Q cos t N - Q sin t B.
SurfacePartials surface_partials(const CanalSurface& M, double s, double t);

/// The sphere-radial unit normal (C - alpha)/r. It satisfies
/// <C_tt, n> = -Q^2/r, which fixes the sign of every second-form coefficient.
Vec3 unit_normal(const CanalSurface& M, double s, double t);

FirstForm first_form(const CanalSurface& M, double s, double t);
SecondForm second_form(const CanalSurface& M, double s, double t);
FormCoefficients form_coefficients(const CanalSurface& M, double s, double t);

/// Closed form of EG - F^2:
/// Q^2 { k^2(R^2+Q^2)cos^2 t + 2k(Q'R - QR' + Q)cos t + 1 - 2R' + R'^2 + Q'^2 }.
double area_element(const CanalSurface& M, double s, double t);

/// Closed form of eg - f^2:
/// (Q^2/r^2) { k^2(Q^2+R^2)cos^2 t + k(2Q'R - 2QR' + Q)cos t - (RR'' + QQ'') }.
double second_form_det(const CanalSurface& M, double s, double t);

namespace detail {

/// Everything the closed forms need at one parameter value.
struct LocalFrame {
    FrenetData fr;
    RadiusJet rj;
    RQJet rq;
    Vec3 alpha;
};

/// check_domain=false is for internal stencil points that may overhang
/// [s_min, s_max] by a finite-difference step.
LocalFrame local_frame(const CanalSurface& M, double s, bool check_domain = true,
                       bool with_position = true);

FormCoefficients forms_from_frame(const LocalFrame& L, double t);

}  // namespace detail

}  // namespace canal
