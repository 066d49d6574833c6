#include "canal/frenet.hpp"

#include <cmath>

namespace canal {

CenterCurve CenterCurve::line() {
    CenterCurve c;
    c.kind_ = Kind::line;
    return c;
}

CenterCurve CenterCurve::circle(double radius) {
    if (!(radius > 0.0))
        throw CanalError(ErrorCode::domain_violation, "circle radius must be positive");
    CenterCurve c;
    c.kind_ = Kind::circle;
    c.p0_ = radius;
    return c;
}

CenterCurve CenterCurve::helix(double a, double b) {
    if (!(a > 0.0))
        throw CanalError(ErrorCode::domain_violation, "helix parameter a must be positive");
    CenterCurve c;
    c.kind_ = Kind::helix;
    c.p0_ = a;
    c.p1_ = b;
    return c;
}

CenterCurve CenterCurve::custom(CustomCurve curve, Interval interval) {
    CenterCurve c;
    c.kind_ = Kind::custom;
    c.custom_ = std::move(curve);
    c.interval_ = interval;
    return c;
}

void CenterCurve::check_domain(double s) const {
    const double slack = 1e-9 * std::max(1.0, std::abs(s));
    if (!interval_.contains(s, slack))
        throw CanalError(ErrorCode::domain_violation,
                         "curve parameter s=" + std::to_string(s) + " outside interval");
}

Vec3 CenterCurve::position(double s) const {
    check_domain(s);
    switch (kind_) {
        case Kind::line:
            return {s, 0.0, 0.0};
        case Kind::circle: {
            const double a = p0_, th = s / a;
            return {a * std::cos(th), a * std::sin(th), 0.0};
        }
        case Kind::helix: {
            const double a = p0_, b = p1_, c = std::sqrt(a * a + b * b), th = s / c;
            return {a * std::cos(th), a * std::sin(th), b * th};
        }
        case Kind::custom:
            return custom_.position(s);
    }
    return {};
}

FrenetData CenterCurve::frenet(double s) const {
    check_domain(s);
    FrenetData fd;
    switch (kind_) {
        case Kind::line:
            fd.T = {1.0, 0.0, 0.0};
            fd.N = {0.0, 1.0, 0.0};
            fd.B = {0.0, 0.0, 1.0};
            break;
        case Kind::circle: {
            const double a = p0_, th = s / a;
            fd.T = {-std::sin(th), std::cos(th), 0.0};
            fd.N = {-std::cos(th), -std::sin(th), 0.0};
            fd.B = fd.T.cross(fd.N);
            fd.kappa = 1.0 / a;
            break;
        }
        case Kind::helix: {
            const double a = p0_, b = p1_, c = std::sqrt(a * a + b * b), th = s / c;
            fd.T = {-(a / c) * std::sin(th), (a / c) * std::cos(th), b / c};
            fd.N = {-std::cos(th), -std::sin(th), 0.0};
            fd.B = fd.T.cross(fd.N);
            fd.kappa = a / (c * c);
            fd.tau = b / (c * c);
            break;
        }
        case Kind::custom:
            fd = custom_.frenet(s);
            break;
    }
    return fd;
}

FrenetData curve_eval(const CenterCurve& curve, double s) { return curve.frenet(s); }

UnitSpeedReport validate_unit_speed(const CenterCurve& curve, double lo, double hi,
                                    int samples, double tol) {
    UnitSpeedReport report;
    if (samples < 2)
        throw CanalError(ErrorCode::domain_violation, "validate_unit_speed needs samples >= 2");
    for (int i = 0; i < samples; ++i) {
        const double s = lo + (hi - lo) * (i + 0.5) / samples;
        const double h = 1e-4 * std::max(1.0, std::abs(s));
        // 4th-order central difference of position
        const Vec3 d = (curve.position(s - 2 * h) - 8.0 * curve.position(s - h) +
                        8.0 * curve.position(s + h) - curve.position(s + 2 * h)) /
                       (12.0 * h);
        const double dev = std::abs(d.norm() - 1.0);
        if (dev > report.worst_deviation) {
            report.worst_deviation = dev;
            report.worst_s = s;
        }
    }
    report.ok = report.worst_deviation <= tol;
    return report;
}

}  // namespace canal
