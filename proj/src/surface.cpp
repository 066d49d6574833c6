#include "canal/surface.hpp"

#include <cmath>
#include <string>

namespace canal {

CanalSurface CanalSurface::make(CenterCurve curve, RadiusFamily radius, int q_sign,
                                double s_min, double s_max) {
    if (!(s_min < s_max))
        throw CanalError(ErrorCode::domain_violation, "surface domain needs s_min < s_max");
    CanalSurface M{std::move(curve), std::move(radius), q_sign < 0 ? -1 : +1, s_min, s_max};
    M.validate();
    return M;
}

void CanalSurface::validate(int samples) const {
    for (int i = 0; i <= samples; ++i) {
        const double s = s_min + (s_max - s_min) * i / samples;
        const RadiusJet j = radius.eval(s);  // throws on r <= 0 or domain violation
        if (!(std::abs(j.r1) < 1.0))
            throw CanalError(ErrorCode::degenerate_q,
                             "degenerate-Q: |r'(s)| >= 1 at s=" + std::to_string(s));
    }
    if (curve.kind() == CenterCurve::Kind::custom) {
        const auto report = validate_unit_speed(curve, s_min, s_max, 64, 1e-8);
        if (!report.ok)
            throw CanalError(ErrorCode::unit_speed_violation,
                             "custom curve is not unit speed: | |alpha'| - 1 | = " +
                                 std::to_string(report.worst_deviation) + " at s=" +
                                 std::to_string(report.worst_s));
    }
}

namespace detail {

LocalFrame local_frame(const CanalSurface& M, double s, bool check_domain,
                       bool with_position) {
    if (check_domain) {
        const double slack = 1e-9 * std::max(1.0, std::abs(s));
        if (s < M.s_min - slack || s > M.s_max + slack)
            throw CanalError(ErrorCode::domain_violation,
                             "s=" + std::to_string(s) + " outside surface domain");
    }
    LocalFrame L;
    L.fr = M.curve.frenet(s);
    L.rj = M.radius.eval(s);
    L.rq = rq_jet(L.rj, M.q_sign);
    if (with_position) L.alpha = M.curve.position(s);
    return L;
}

FormCoefficients forms_from_frame(const LocalFrame& L, double t) {
    const double k = L.fr.kappa, tau = L.fr.tau;
    const double r = L.rj.r;
    const double R = L.rq.R, R1 = L.rq.R1, R2 = L.rq.R2;
    const double Q = L.rq.Q, Q1 = L.rq.Q1, Q2 = L.rq.Q2;
    const double c = std::cos(t), st = std::sin(t);

    FormCoefficients fc;
    fc.E = Q * Q * k * k * c * c + (2 * Q - 2 * Q * R1 + 2 * Q1 * R) * k * c +
           2 * Q * R * k * tau * st + Q * Q * tau * tau + Q1 * Q1 + R * R * k * k +
           1 - 2 * R1 + R1 * R1;
    fc.F = -Q * (R * k * st + Q * tau);
    fc.G = Q * Q;
    fc.e = -(1.0 / r) * (Q * Q * k * k * c * c + (2 * R * Q1 - 2 * Q * R1 + Q) * k * c -
                         Q * Q2 + R * R * k * k - R * R2 + Q * Q * tau * tau +
                         2 * R * Q * k * tau * st);
    fc.f = (1.0 / r) * Q * (R * k * st + Q * tau);
    fc.g = -Q * Q / r;
    fc.area2 = fc.E * fc.G - fc.F * fc.F;
    fc.det2 = fc.e * fc.g - fc.f * fc.f;
    return fc;
}

}  // namespace detail

Vec3 surface_point(const CanalSurface& M, double s, double t) {
    const auto L = detail::local_frame(M, s);
    return L.alpha - L.rq.R * L.fr.T - L.rq.Q * std::cos(t) * L.fr.N +
           L.rq.Q * std::sin(t) * L.fr.B;
}

SurfacePartials surface_partials(const CanalSurface& M, double s, double t) {
    const auto L = detail::local_frame(M, s, true, false);
    const auto& fr = L.fr;
    const double k = fr.kappa, kp = fr.kappa_prime, tau = fr.tau, taup = fr.tau_prime;
    const double R = L.rq.R, R1 = L.rq.R1, R2 = L.rq.R2;
    const double Q = L.rq.Q, Q1 = L.rq.Q1, Q2 = L.rq.Q2;
    const double c = std::cos(t), st = std::sin(t);

    // C_s = a T + b N + cc B and its s-derivative via T' = kN, N' = -kT + tau B,
    // B' = -tau N
    const double a = 1 - R1 + Q * k * c;
    const double b = -(R * k + Q1 * c + Q * tau * st);
    const double cc = Q1 * st - Q * tau * c;
    const double ap = -R2 + (Q1 * k + Q * kp) * c;
    const double bp = -(R1 * k + R * kp) - Q2 * c - (Q1 * tau + Q * taup) * st;
    const double ccp = -(Q1 * tau + Q * taup) * c + Q2 * st;

    SurfacePartials p;
    p.C_s = a * fr.T + b * fr.N + cc * fr.B;
    p.C_t = Q * st * fr.N + Q * c * fr.B;
    p.C_tt = Q * c * fr.N - Q * st * fr.B;
    p.C_st = -Q * k * st * fr.T + (Q1 * st - Q * tau * c) * fr.N +
             (Q * tau * st + Q1 * c) * fr.B;
    p.C_ss = (ap - b * k) * fr.T + (a * k + bp - cc * tau) * fr.N + (b * tau + ccp) * fr.B;
    return p;
}

Vec3 unit_normal(const CanalSurface& M, double s, double t) {
    const auto L = detail::local_frame(M, s, true, false);
    return (-L.rq.R * L.fr.T - L.rq.Q * std::cos(t) * L.fr.N +
            L.rq.Q * std::sin(t) * L.fr.B) /
           L.rj.r;
}

FirstForm first_form(const CanalSurface& M, double s, double t) {
    const auto fc = form_coefficients(M, s, t);
    return {fc.E, fc.F, fc.G};
}

SecondForm second_form(const CanalSurface& M, double s, double t) {
    const auto fc = form_coefficients(M, s, t);
    return {fc.e, fc.f, fc.g};
}

FormCoefficients form_coefficients(const CanalSurface& M, double s, double t) {
    return detail::forms_from_frame(detail::local_frame(M, s, true, false), t);
}

namespace {

// Q vanishes together with both determinants exactly at |r'| = 1; past that
// slope no real surface exists.
bool q_collapses(const CanalSurface& M, double s) {
    const double slack = 1e-9 * std::max(1.0, std::abs(s));
    if (s < M.s_min - slack || s > M.s_max + slack)
        throw CanalError(ErrorCode::domain_violation,
                         "s=" + std::to_string(s) + " outside surface domain");
    const RadiusJet j = M.radius.eval(s);
    if (std::abs(j.r1) < 1.0) return false;
    if (std::abs(j.r1) <= 1.0 + 1e-12) return true;
    throw CanalError(ErrorCode::degenerate_q,
                     "degenerate-Q: |r'(s)| > 1 at s=" + std::to_string(s));
}

}  // namespace

double area_element(const CanalSurface& M, double s, double t) {
    if (q_collapses(M, s)) return 0.0;
    const auto L = detail::local_frame(M, s, false, false);
    const double k = L.fr.kappa;
    const double R = L.rq.R, R1 = L.rq.R1;
    const double Q = L.rq.Q, Q1 = L.rq.Q1;
    const double c = std::cos(t);
    return Q * Q * (k * k * (R * R + Q * Q) * c * c +
                    2 * k * (Q1 * R - Q * R1 + Q) * c +
                    1 - 2 * R1 + R1 * R1 + Q1 * Q1);
}

double second_form_det(const CanalSurface& M, double s, double t) {
    if (q_collapses(M, s)) return 0.0;
    const auto L = detail::local_frame(M, s, false, false);
    const double k = L.fr.kappa;
    const double r = L.rj.r;
    const double R = L.rq.R, R1 = L.rq.R1, R2 = L.rq.R2;
    const double Q = L.rq.Q, Q1 = L.rq.Q1, Q2 = L.rq.Q2;
    const double c = std::cos(t);
    return (Q * Q / (r * r)) * (k * k * (Q * Q + R * R) * c * c +
                                k * (2 * Q1 * R - 2 * Q * R1 + Q) * c -
                                (R * R2 + Q * Q2));
}

}  // namespace canal
