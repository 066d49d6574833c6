#include "canal/radius.hpp"

#include <cmath>
#include <string>

namespace canal {

RadiusFamily RadiusFamily::constant(double c) {
    RadiusFamily f;
    f.kind_ = Kind::constant;
    f.p0_ = c;
    return f;
}

RadiusFamily RadiusFamily::linear(double c1, double c2) {
    RadiusFamily f;
    f.kind_ = Kind::linear;
    f.p0_ = c1;
    f.p1_ = c2;
    return f;
}

RadiusFamily RadiusFamily::sqrt_quadratic(double c1, double c2) {
    RadiusFamily f;
    f.kind_ = Kind::sqrt_quadratic;
    f.p0_ = c1;
    f.p1_ = c2;
    return f;
}

RadiusFamily RadiusFamily::sinusoidal(double offset, double amplitude, double omega) {
    RadiusFamily f;
    f.kind_ = Kind::sinusoidal;
    f.p0_ = offset;
    f.p1_ = amplitude;
    f.p2_ = omega;
    return f;
}

RadiusFamily RadiusFamily::custom(CustomRadius radius) {
    RadiusFamily f;
    f.kind_ = Kind::custom;
    f.custom_ = std::move(radius);
    return f;
}

RadiusJet RadiusFamily::eval(double s) const {
    RadiusJet j;
    switch (kind_) {
        case Kind::constant:
            j = {p0_, 0.0, 0.0, 0.0, 0.0};
            break;
        case Kind::linear:
            j = {p0_ * s + p1_, p0_, 0.0, 0.0, 0.0};
            break;
        case Kind::sqrt_quadratic: {
            const double c1 = p0_, c2 = p1_;
            const double p = s * s - 2.0 * c1 * s + 2.0 * c2;
            if (!(p > 0.0))
                throw CanalError(ErrorCode::domain_violation,
                                 "sqrt_quadratic radius undefined at s=" + std::to_string(s));
            const double r = std::sqrt(p);
            const double D = 2.0 * c2 - c1 * c1;  // r^2 - (s - c1)^2
            const double r1 = (s - c1) / r;
            const double r2 = D / (r * r * r);
            const double r3 = -3.0 * D * r1 / (r * r * r * r);
            const double r4 = -3.0 * D * D / std::pow(r, 7) + 12.0 * D * r1 * r1 / std::pow(r, 5);
            j = {r, r1, r2, r3, r4};
            break;
        }
        case Kind::sinusoidal: {
            const double p = p0_, q = p1_, w = p2_;
            j = {p + q * std::sin(w * s), q * w * std::cos(w * s),
                 -q * w * w * std::sin(w * s), -q * w * w * w * std::cos(w * s),
                 q * w * w * w * w * std::sin(w * s)};
            break;
        }
        case Kind::custom:
            j = custom_.jet(s);
            break;
    }
    if (!(j.r > 0.0))
        throw CanalError(ErrorCode::nonpositive_radius,
                         "radius r(s) must be positive, got " + std::to_string(j.r) +
                             " at s=" + std::to_string(s));
    return j;
}

RadiusJet radius_eval(const RadiusFamily& radius, double s) { return radius.eval(s); }

RQJet rq_jet(const RadiusJet& j, int q_sign) {
    const double one_minus = 1.0 - j.r1 * j.r1;
    if (!(one_minus > 0.0))
        throw CanalError(ErrorCode::degenerate_q,
                         "degenerate-Q: |r'| >= 1 (r' = " + std::to_string(j.r1) + ")");
    RQJet q;
    q.R = j.r * j.r1;
    q.R1 = j.r1 * j.r1 + j.r * j.r2;
    q.R2 = 3.0 * j.r1 * j.r2 + j.r * j.r3;
    q.R3 = 4.0 * j.r1 * j.r3 + 3.0 * j.r2 * j.r2 + j.r * j.r4;
    q.Q = (q_sign < 0 ? -1.0 : 1.0) * j.r * std::sqrt(one_minus);
    q.Q1 = (j.r * j.r1 - q.R * q.R1) / q.Q;
    q.Q2 = (j.r1 * j.r1 + j.r * j.r2 - q.R1 * q.R1 - q.R * q.R2 - q.Q1 * q.Q1) / q.Q;
    q.Q3 = (3.0 * j.r1 * j.r2 + j.r * j.r3 - 3.0 * q.R1 * q.R2 - q.R * q.R3 -
            3.0 * q.Q1 * q.Q2) / q.Q;
    return q;
}

JetCheckReport validate_radius_jets(const RadiusFamily& radius, double lo, double hi,
                                    int samples, double tol) {
    JetCheckReport report;
    auto value = [&](double s) { return radius.eval(s).r; };
    for (int i = 0; i < samples; ++i) {
        const double s = lo + (hi - lo) * (i + 0.5) / samples;
        const RadiusJet j = radius.eval(s);
        const double analytic[4] = {j.r1, j.r2, j.r3, j.r4};
        // central stencils at step h and h/2 with one Richardson combination
        auto stencil = [&](int order, double h) -> double {
            const double f2 = value(s + 2 * h), f1 = value(s + h), f0 = value(s);
            const double fm1 = value(s - h), fm2 = value(s - 2 * h);
            switch (order) {
                case 1: return (fm2 - 8 * fm1 + 8 * f1 - f2) / (12 * h);
                case 2: return (-fm2 + 16 * fm1 - 30 * f0 + 16 * f1 - f2) / (12 * h * h);
                case 3: return (f2 - 2 * f1 + 2 * fm1 - fm2) / (2 * h * h * h);
                default: return (f2 - 4 * f1 + 6 * f0 - 4 * fm1 + fm2) / (h * h * h * h);
            }
        };
        for (int order = 1; order <= 4; ++order) {
            const double h = (order <= 2 ? 1e-3 : 2e-2) * std::max(1.0, std::abs(s));
            const double coarse = stencil(order, h);
            const double fine = stencil(order, h / 2);
            const int p = (order <= 2) ? 4 : 2;  // stencil order of accuracy
            const double w = std::pow(2.0, p);
            const double fd = (w * fine - coarse) / (w - 1.0);
            const double scale = std::max({1.0, std::abs(analytic[order - 1]), std::abs(fd)});
            const double rel = std::abs(fd - analytic[order - 1]) / scale;
            if (rel > report.worst_rel) {
                report.worst_rel = rel;
                report.worst_s = s;
                report.worst_order = order;
            }
        }
    }
    report.ok = report.worst_rel <= tol;
    return report;
}

}  // namespace canal
