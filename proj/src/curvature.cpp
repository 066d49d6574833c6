#include "canal/curvature.hpp"

#include <algorithm>
#include <cmath>

namespace canal {

namespace {

double richardson_d1(const std::function<double(double)>& fn, double x, double h) {
    const double coarse = (fn(x + h) - fn(x - h)) / (2 * h);
    const double fine = (fn(x + h / 2) - fn(x - h / 2)) / h;
    return (4 * fine - coarse) / 3;
}

double richardson_d2(const std::function<double(double)>& fn, double x, double h) {
    const double f0 = fn(x);
    const double coarse = (fn(x + h) - 2 * f0 + fn(x - h)) / (h * h);
    const double fine = (fn(x + h / 2) - 2 * f0 + fn(x - h / 2)) / (h * h / 4);
    return (4 * fine - coarse) / 3;
}

struct BraceCoefficients {
    double c2 = 0.0, c1 = 0.0, c0 = 0.0;  // of cos^2, cos^1, cos^0
    double eval(double c) const { return (c2 * c + c1) * c + c0; }
    double max_abs() const { return std::max({std::abs(c2), std::abs(c1), std::abs(c0)}); }
};

// K numerator brace: k^2(R^2+Q^2)cos^2 + k(2Q'R - 2QR' + Q)cos - (RR'' + QQ'')
BraceCoefficients k_brace(const detail::LocalFrame& L) {
    const double k = L.fr.kappa;
    const double R = L.rq.R, R1 = L.rq.R1, R2 = L.rq.R2;
    const double Q = L.rq.Q, Q1 = L.rq.Q1, Q2 = L.rq.Q2;
    return {k * k * (R * R + Q * Q), k * (2 * Q1 * R - 2 * Q * R1 + Q), -(R * R2 + Q * Q2)};
}

// H numerator brace: 2k^2(Q^2+R^2)cos^2 + k(4(Q'R - QR') + 3Q)cos
//                    + R'^2 + Q'^2 - 2R' - RR'' - QQ'' + 1
BraceCoefficients h_brace(const detail::LocalFrame& L) {
    const double k = L.fr.kappa;
    const double R = L.rq.R, R1 = L.rq.R1, R2 = L.rq.R2;
    const double Q = L.rq.Q, Q1 = L.rq.Q1, Q2 = L.rq.Q2;
    return {2 * k * k * (Q * Q + R * R), k * (4 * (Q1 * R - Q * R1) + 3 * Q),
            R1 * R1 + Q1 * Q1 - 2 * R1 - R * R2 - Q * Q2 + 1};
}

double area2_from_frame(const detail::LocalFrame& L, double t) {
    const double k = L.fr.kappa;
    const double R = L.rq.R, R1 = L.rq.R1;
    const double Q = L.rq.Q, Q1 = L.rq.Q1;
    const double c = std::cos(t);
    return Q * Q * (k * k * (R * R + Q * Q) * c * c + 2 * k * (Q1 * R - Q * R1 + Q) * c +
                    1 - 2 * R1 + R1 * R1 + Q1 * Q1);
}

}  // namespace

double gauss_curvature(const FormCoefficients& forms, const Tolerances& tols) {
    if (!(forms.area2 > tols.eps_deg))
        throw CanalError(ErrorCode::degenerate_first_form,
                         "degenerate first fundamental form (EG - F^2 <= eps)");
    return forms.det2 / forms.area2;
}

double mean_curvature(const FormCoefficients& forms, const Tolerances& tols) {
    if (!(forms.area2 > tols.eps_deg))
        throw CanalError(ErrorCode::degenerate_first_form,
                         "degenerate first fundamental form (EG - F^2 <= eps)");
    return (forms.E * forms.g - 2 * forms.F * forms.f + forms.G * forms.e) /
           (2 * forms.area2);
}

double gauss_curvature_closed(const CanalSurface& M, double s, double t,
                              const Tolerances& tols) {
    const auto L = detail::local_frame(M, s, true, false);
    const auto brace = k_brace(L);
    const double area2 = area2_from_frame(L, t);
    if (area2 > tols.eps_deg) {
        const double Q = L.rq.Q, r = L.rj.r;
        return Q * Q * brace.eval(std::cos(t)) / (r * r * area2);
    }
    if (brace.max_abs() <= tols.eps_structural) return 0.0;  // structural zero
    throw CanalError(ErrorCode::degenerate_first_form,
                     "degenerate first fundamental form at s=" + std::to_string(s));
}

double mean_curvature_closed(const CanalSurface& M, double s, double t,
                             const Tolerances& tols) {
    const auto L = detail::local_frame(M, s, true, false);
    const auto brace = h_brace(L);
    const double area2 = area2_from_frame(L, t);
    if (area2 > tols.eps_deg) {
        const double Q = L.rq.Q, r = L.rj.r;
        return -Q * Q * brace.eval(std::cos(t)) / (2 * r * area2);
    }
    if (brace.max_abs() <= tols.eps_structural) return 0.0;  // structural zero
    throw CanalError(ErrorCode::degenerate_first_form,
                     "degenerate first fundamental form at s=" + std::to_string(s));
}

UndefReal brioschi_kii(const CanalSurface& M, double s, double t, const FdConfig& fd,
                       BrioschiDenominator den, const Tolerances& tols) {
    const auto fc = form_coefficients(M, s, t);
    if (std::abs(fc.det2) <= tols.eps_ii) return UndefReal::undefined("det II≈0");

    auto coeff = [&](double ss, double tt, int which) {
        const auto L = detail::local_frame(M, ss, false, false);
        const auto c = detail::forms_from_frame(L, tt);
        return which == 0 ? c.e : (which == 1 ? c.f : c.g);
    };
    const double hs = fd.step * std::max(1.0, std::abs(s));
    const double ht = fd.step;
    auto in_s = [&](int which) { return [&, which](double x) { return coeff(x, t, which); }; };
    auto in_t = [&](int which) { return [&, which](double x) { return coeff(s, x, which); }; };

    const double e = fc.e, f = fc.f, g = fc.g;
    const double e_s = richardson_d1(in_s(0), s, hs);
    const double e_t = richardson_d1(in_t(0), t, ht);
    const double e_tt = richardson_d2(in_t(0), t, ht);
    const double f_s = richardson_d1(in_s(1), s, hs);
    const double f_t = richardson_d1(in_t(1), t, ht);
    const double f_st = richardson_d1(
        [&](double x) {
            return richardson_d1([&](double y) { return coeff(y, x, 1); }, s, hs);
        },
        t, ht);
    const double g_s = richardson_d1(in_s(2), s, hs);
    const double g_t = richardson_d1(in_t(2), t, ht);
    const double g_ss = richardson_d2(in_s(2), s, hs);

    auto det3 = [](double a11, double a12, double a13, double a21, double a22, double a23,
                   double a31, double a32, double a33) {
        return a11 * (a22 * a33 - a23 * a32) - a12 * (a21 * a33 - a23 * a31) +
               a13 * (a21 * a32 - a22 * a31);
    };
    const double det_a = det3(-0.5 * e_tt + f_st - 0.5 * g_ss, 0.5 * e_s, f_s - 0.5 * e_t,
                              f_t - 0.5 * g_s, e, f,
                              0.5 * g_t, f, g);
    const double det_b = det3(0.0, 0.5 * e_t, 0.5 * g_s,
                              0.5 * e_t, e, f,
                              0.5 * g_s, f, g);
    const double base = den == BrioschiDenominator::printed_abs ? std::abs(e * g) - f * f
                                                                : e * g - f * f;
    return UndefReal::of((det_a - det_b) / (base * base));
}

double KiiCoefficients::max_abs() const {
    double m = 0.0;
    for (const auto& p : n) m = std::max({m, std::abs(p.constant), std::abs(p.sin_t)});
    return m;
}

KiiCoefficients kii_coefficients(const CanalSurface& M, double s, KiiVariant variant) {
    const auto L = detail::local_frame(M, s, true, false);
    const double k = L.fr.kappa, kp = L.fr.kappa_prime, tau = L.fr.tau;
    const double r = L.rj.r, r1 = L.rj.r1;
    const double R = L.rq.R, R1 = L.rq.R1, R2 = L.rq.R2, R3 = L.rq.R3;
    const double Q = L.rq.Q, Q1 = L.rq.Q1, Q2 = L.rq.Q2, Q3 = L.rq.Q3;
    const double rr1 = r * r1, rr2 = r * L.rj.r2, r2_ = r * r;
    const double k3 = k * k * k;

    KiiCoefficients out;
    out.n[0].constant =
        -Q * k * k * r2_ + 4 * Q * R1 * k * k * r2_ - 4 * Q * R1 * R1 * k * k * r2_ -
        2 * Q1 * R * k * k * r2_ - Q * Q * Q3 * rr1 + 2 * Q * Q1 * Q3 * r2_ -
        4 * Q * Q * Q2 * k * k * r2_ - 2 * Q * R * R2 * r1 * r1 + 2 * Q * Q * Q2 * rr2 +
        2 * Q * R * R2 * rr2 + 2 * Q1 * R1 * R2 * r2_ + 2 * Q1 * R * R3 * r2_ -
        4 * Q2 * R * R2 * r2_ - Q * R * rr1 * k * k + 4 * Q1 * R * R1 * k * k * r2_ +
        2 * Q * R * R1 * rr1 * k * k - 2 * Q1 * R * R * rr1 * k * k -
        4 * Q * Q2 * Q2 * r2_ + 2 * Q1 * Q1 * Q2 * r2_ + 2 * Q1 * R * R2 * rr1 -
        2 * Q * Q * Q2 * r1 * r1 + Q * Q1 * Q2 * rr1 - Q * R1 * R2 * rr1 -
        Q * R * R3 * rr1 - 4 * Q * R * R2 * k * k * r2_;
    out.n[0].sin_t = k * tau *
                     ((4 * Q * Q2 * R + 4 * R * R * R2 + 2 * Q * Q1 + 4 * Q1 * Q1 * R -
                       4 * Q * Q1 * R1) * r2_ +
                      Q * (2 * Q * R1 - Q - 2 * Q1 * R) * rr1);
    out.n[1].constant =
        Q * Q * rr1 * kp + 4 * R * R * R1 * r2_ * k3 - 4 * Q1 * Q1 * R * kp * r2_ -
        2 * Q * Q1 * kp * r2_ - 2 * R * R * R * k3 * rr1 - 4 * Q * Q * R1 * r1 * r1 * k -
        2 * Q * Q * rr2 * k - 4 * R * R * R2 * kp * r2_ - 2 * R * R * k3 * r2_ -
        2 * Q1 * Q1 * k * r2_ + 2 * Q * Q * r1 * r1 * k - Q * Q1 * rr1 * k +
        4 * Q * Q1 * R * r1 * r1 * k - 2 * Q * Q * R1 * rr1 * kp +
        4 * Q * Q1 * R1 * rr1 * k + 2 * Q * Q1 * R * rr1 * kp - 4 * Q1 * Q1 * R * rr1 * k +
        2 * R * R * R2 * rr1 * k - 6 * R * R1 * R2 * k * r2_ + 4 * Q * Q1 * R * k3 * r2_ +
        Q * Q1 * R1 * kp * r2_ - 2 * Q * Q * R * k3 * rr1 + 2 * R * R * R3 * k * r2_ +
        2 * R * R2 * k * r2_ + 6 * Q * Q2 * k * r2_ + 4 * Q * Q2 * R * rr1 * k -
        16 * Q * Q2 * R1 * k * r2_ - 4 * Q * Q2 * R * kp * r2_ + 6 * Q1 * Q2 * R * k * r2_ -
        2 * Q * Q * R2 * rr1 * k + 4 * Q * Q * R1 * rr2 * k - 4 * Q * Q1 * R * rr2 * k +
        2 * Q * Q3 * R * k * r2_ + 4 * Q * Q1 * R2 * k * r2_;
    out.n[1].sin_t = k * k * tau *
                     (2 * Q * r2_ * (2 * Q * Q1 + 2 * R * R1 - R) -
                      2 * Q * (R * R + Q * Q) * rr1);
    out.n[2].constant =
        k * (12 * Q * Q * Q2 * k * r2_ + 8 * Q * R1 * k * r2_ - 12 * Q * R1 * R1 * k * r2_ -
             4 * Q * Q1 * Q1 * k * r2_ + 2 * Q * R * R * r1 * r1 * k +
             2 * Q * Q * Q * kp * rr1 - Q * R * k * rr1 + 2 * Q * R * R * kp * rr1 -
             2 * Q * Q * Q * k * rr2 - Q * k * r2_ + 2 * Q * Q * Q * r1 * r1 * k -
             4 * Q * R * R1 * kp * r2_ + 12 * Q * R * R2 * k * r2_ -
             8 * Q1 * R * R1 * k * r2_ + 2 * Q * R * kp * r2_ - 4 * Q1 * R * k * r2_ -
             4 * Q * Q * Q1 * kp * r2_ - 4 * Q1 * R * R * rr1 * k - 2 * Q * R * R * k * rr2 +
             4 * Q * R * R1 * rr1 * k);
    if (variant == KiiVariant::corrected) {
        out.n[1].constant += 3 * kp * Q * Q1 * R1 * r2_;
        out.n[2].constant += 16 * Q1 * R * R1 * k * k * r2_;
    }
    out.n[3].constant = 2 * Q * k3 * r2_ * (8 * Q * R1 - 8 * Q1 * R - 3 * Q);
    out.n[4].constant = -4 * Q * k3 * k * r2_ * (Q * Q + R * R);
    return out;
}

UndefReal kii_closed(const CanalSurface& M, double s, double t, KiiVariant variant,
                     const Tolerances& tols) {
    const auto coeffs = kii_coefficients(M, s, variant);
    if (coeffs.max_abs() <= tols.eps_structural) {
        // identically vanishing numerator counts as a structural zero only on a
        // surface whose first form is intact (cylinder, cone); a fully
        // degenerate parametrization stays undefined
        if (area_element(M, s, t) > tols.eps_deg) return UndefReal::of(0.0);
        return UndefReal::undefined("det II≈0");
    }
    const double det2 = second_form_det(M, s, t);
    if (std::abs(det2) <= tols.eps_ii) return UndefReal::undefined("det II≈0");
    const auto L = detail::local_frame(M, s, true, false);
    const double c = std::cos(t), st = std::sin(t);
    double num = 0.0, cp = 1.0;
    for (int i = 0; i <= 4; ++i) {
        num += (coeffs.n[i].constant + coeffs.n[i].sin_t * st) * cp;
        cp *= c;
    }
    const double Q = L.rq.Q, r = L.rj.r;
    return UndefReal::of(Q * Q * Q * num / (4 * std::pow(r, 5) * det2 * det2));
}

namespace {

// Quadratic-in-cos(t) coefficients of det I / Q^2 and det II r^2 / Q^2, with
// their s-derivatives (available from the jets without extra orders).
struct DetQuadratics {
    double m2, m1, m0, n2, n1, n0;
    double m2p, m1p, m0p, n2p, n1p, n0p;
    double Q, r, r1;
};

DetQuadratics det_quadratics(const detail::LocalFrame& L) {
    const double k = L.fr.kappa, kp = L.fr.kappa_prime;
    const double R = L.rq.R, R1 = L.rq.R1, R2 = L.rq.R2, R3 = L.rq.R3;
    const double Q = L.rq.Q, Q1 = L.rq.Q1, Q2 = L.rq.Q2, Q3 = L.rq.Q3;
    DetQuadratics d;
    d.m2 = (Q * Q + R * R) * k * k;
    d.m1 = 2 * k * (Q - Q * R1 + Q1 * R);
    d.m0 = Q1 * Q1 + R1 * R1 + 1 - 2 * R1;
    d.n2 = d.m2;
    d.n1 = k * (2 * Q1 * R - 2 * Q * R1 + Q);
    d.n0 = -(R * R2 + Q * Q2);
    d.m2p = 2 * (Q * Q1 + R * R1) * k * k + 2 * (Q * Q + R * R) * k * kp;
    d.m1p = 2 * kp * (Q - Q * R1 + Q1 * R) + 2 * k * (Q1 - Q * R2 + Q2 * R);
    d.m0p = 2 * Q1 * Q2 + 2 * R1 * R2 - 2 * R2;
    d.n2p = d.m2p;
    d.n1p = kp * (2 * Q1 * R - 2 * Q * R1 + Q) + k * (2 * Q2 * R - 2 * Q * R2 + Q1);
    d.n0p = -(R1 * R2 + R * R3 + Q1 * Q2 + Q * Q3);
    d.Q = Q;
    d.r = L.rj.r;
    d.r1 = L.rj.r1;
    return d;
}

struct HiiPointError {
    std::string reason;
};

// The divergence field V^i = sqrt|det II| L^ij psi_j with psi = ln sqrt|K|,
// psi derivatives in closed form.
struct HiiPoint {
    double e, f, g, N;      // second form and its determinant
    double psi_s, psi_t;
    double Vs, Vt;
    double dVt_closed;      // t-derivative of V^t, closed form
};

HiiPoint hii_point(const CanalSurface& M, double s, double t, const Tolerances& tols,
                   bool check_domain, HiiPointError* err) {
    const auto L = detail::local_frame(M, s, check_domain, false);
    const auto d = det_quadratics(L);
    const double c = std::cos(t), st = std::sin(t);

    const double m = (d.m2 * c + d.m1) * c + d.m0;
    const double n = (d.n2 * c + d.n1) * c + d.n0;
    const double m_s = (d.m2p * c + d.m1p) * c + d.m0p;
    const double n_s = (d.n2p * c + d.n1p) * c + d.n0p;
    const double m_t = -st * (2 * d.m2 * c + d.m1);
    const double n_t = -st * (2 * d.n2 * c + d.n1);
    const double m_tt = -c * (2 * d.m2 * c + d.m1) + 2 * d.m2 * st * st;
    const double n_tt = -c * (2 * d.n2 * c + d.n1) + 2 * d.n2 * st * st;
    const double m_st = -st * (2 * d.m2p * c + d.m1p);
    const double n_st = -st * (2 * d.n2p * c + d.n1p);

    HiiPoint p{};
    const auto fc = detail::forms_from_frame(L, t);
    p.e = fc.e;
    p.f = fc.f;
    p.g = fc.g;
    p.N = fc.det2;
    const double Mdet = fc.area2;
    if (err) {
        if (std::abs(p.N) <= tols.eps_ii) {
            err->reason = "det II≈0";
            return p;
        }
        if (!(Mdet > tols.eps_deg)) {
            err->reason = "det I≈0";
            return p;
        }
        if (std::abs(p.N / Mdet) <= tols.eps_k) {
            err->reason = "K≈0";
            return p;
        }
    }

    p.psi_s = 0.5 * (n_s / n - m_s / m - 2 * d.r1 / d.r);
    p.psi_t = 0.5 * (n_t / n - m_t / m);
    const double psi_st =
        0.5 * ((n_st * n - n_s * n_t) / (n * n) - (m_st * m - m_s * m_t) / (m * m));
    const double psi_tt =
        0.5 * ((n_tt * n - n_t * n_t) / (n * n) - (m_tt * m - m_t * m_t) / (m * m));

    // t-derivatives of the closed e, f and of det II
    const double k = L.fr.kappa, tau = L.fr.tau;
    const double R = L.rq.R, R1 = L.rq.R1;
    const double Q = L.rq.Q, Q1 = L.rq.Q1;
    const double r = L.rj.r;
    const double e2 = Q * Q * k * k;
    const double e1 = (2 * R * Q1 - 2 * Q * R1 + Q) * k;
    const double es = 2 * R * Q * k * tau;
    const double e_t = -(1.0 / r) * (-st * (2 * e2 * c + e1) + es * c);
    const double f_t = (Q / r) * R * k * c;
    const double N_t = (Q * Q / (r * r)) * n_t;

    const double sq = std::sqrt(std::abs(p.N));
    p.Vs = sq * (p.g * p.psi_s - p.f * p.psi_t) / p.N;
    p.Vt = sq * (-p.f * p.psi_s + p.e * p.psi_t) / p.N;
    const double P = -p.f * p.psi_s + p.e * p.psi_t;
    const double P_t = -f_t * p.psi_s - p.f * psi_st + e_t * p.psi_t + p.e * psi_tt;
    p.dVt_closed = (sq / p.N) * (P_t - P * N_t / (2 * p.N));
    return p;
}

}  // namespace

UndefReal second_mean_curvature(const CanalSurface& M, double s, double t,
                                const HiiConfig& cfg, const Tolerances& tols) {
    HiiPointError err;
    const HiiPoint center = hii_point(M, s, t, tols, true, &err);
    if (!err.reason.empty()) return UndefReal::undefined(err.reason);

    const double hs = cfg.step * std::max(1.0, std::abs(s));
    double divergence;
    if (!cfg.nested_fd) {
        HiiPointError stencil_err;
        auto vs_at = [&](double x) {
            HiiPointError e2;
            const auto p = hii_point(M, x, t, tols, false, &e2);
            if (!e2.reason.empty() && stencil_err.reason.empty()) stencil_err = e2;
            return p.Vs;
        };
        const double dVs = richardson_d1(vs_at, s, hs);
        if (!stencil_err.reason.empty())
            return UndefReal::undefined(stencil_err.reason + " near stencil");
        divergence = dVs + center.dVt_closed;
    } else {
        // cross-check mode: every derivative by nested central differences
        // of psi = ln sqrt|K|
        auto psi = [&](double ss, double tt) {
            const auto L = detail::local_frame(M, ss, false, false);
            const auto fc = detail::forms_from_frame(L, tt);
            return 0.5 * std::log(std::abs(fc.det2 / fc.area2));
        };
        auto field = [&](double ss, double tt, int which) {
            const auto L = detail::local_frame(M, ss, false, false);
            const auto fc = detail::forms_from_frame(L, tt);
            const double ps = richardson_d1([&](double x) { return psi(x, tt); }, ss, hs);
            const double pt = richardson_d1([&](double x) { return psi(ss, x); }, tt, cfg.step);
            const double sq = std::sqrt(std::abs(fc.det2));
            return which == 0 ? sq * (fc.g * ps - fc.f * pt) / fc.det2
                              : sq * (-fc.f * ps + fc.e * pt) / fc.det2;
        };
        const double dVs = richardson_d1([&](double x) { return field(x, t, 0); }, s, hs);
        const double dVt = richardson_d1([&](double x) { return field(s, x, 1); }, t, cfg.step);
        divergence = dVs + dVt;
    }
    if (!std::isfinite(divergence)) return UndefReal::undefined("divergence not finite");
    const double H = mean_curvature_closed(M, s, t, tols);
    return UndefReal::of(H - divergence / (2 * std::sqrt(std::abs(center.N))));
}

double w10_coefficient(const CanalSurface& M, double s) {
    const auto L = detail::local_frame(M, s, true, false);
    const double k = L.fr.kappa, Q = L.rq.Q, R = L.rq.R, r = L.rj.r;
    return 8 * std::pow(k, 10) * std::pow(Q, 10) * std::pow(Q * Q + R * R, 5) /
           std::pow(r, 5);
}

CurvatureSample curvature_sample(const CanalSurface& M, double s, double t,
                                 const Tolerances& tols) {
    CurvatureSample sample;
    sample.K = gauss_curvature_closed(M, s, t, tols);
    sample.H = mean_curvature_closed(M, s, t, tols);
    sample.K_II = kii_closed(M, s, t, KiiVariant::printed, tols);
    sample.H_II = second_mean_curvature(M, s, t, {}, tols);
    return sample;
}

}  // namespace canal
