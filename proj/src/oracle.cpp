#include "canal/oracle.hpp"

#include <cmath>
#include <vector>

namespace canal {

namespace {

// 4th-order central stencils; Richardson table on top. The base error order
// is 4, so successive column weights are 16, 64, ...
template <typename Eval>
Vec3 extrapolate(const Eval& base, double h, int levels) {
    std::vector<Vec3> row(levels);
    for (int i = 0; i < levels; ++i) row[i] = base(h / (1 << i));
    double weight = 16.0;
    for (int j = 1; j < levels; ++j) {
        for (int i = 0; i < levels - j; ++i)
            row[i] = (weight * row[i + 1] - row[i]) / (weight - 1.0);
        weight *= 4.0;
    }
    return row[0];
}

}  // namespace

SurfacePartials numeric_partials(const SurfaceFn& P, double s, double t,
                                 const StencilConfig& cfg) {
    if (!(cfg.step > 0.0) || cfg.richardson_levels < 1)
        throw CanalError(ErrorCode::domain_violation, "invalid stencil configuration");
    const double hs0 = cfg.step * std::max(1.0, std::abs(s));
    const double ht0 = cfg.step;
    const int levels = cfg.richardson_levels;

    auto d1s = [&](double h) {
        return (P(s - 2 * h, t) - 8.0 * P(s - h, t) + 8.0 * P(s + h, t) - P(s + 2 * h, t)) /
               (12.0 * h);
    };
    auto d1t = [&](double h) {
        return (P(s, t - 2 * h) - 8.0 * P(s, t - h) + 8.0 * P(s, t + h) - P(s, t + 2 * h)) /
               (12.0 * h);
    };
    auto d2s = [&](double h) {
        return (-P(s - 2 * h, t) + 16.0 * P(s - h, t) - 30.0 * P(s, t) +
                16.0 * P(s + h, t) - P(s + 2 * h, t)) /
               (12.0 * h * h);
    };
    auto d2t = [&](double h) {
        return (-P(s, t - 2 * h) + 16.0 * P(s, t - h) - 30.0 * P(s, t) +
                16.0 * P(s, t + h) - P(s, t + 2 * h)) /
               (12.0 * h * h);
    };
    // mixed derivative: 4th-order first-derivative stencil in t of the
    // 4th-order stencil in s
    auto dst = [&](double h) {
        auto ds_at = [&](double tt) {
            return (P(s - 2 * h, tt) - 8.0 * P(s - h, tt) + 8.0 * P(s + h, tt) -
                    P(s + 2 * h, tt)) /
                   (12.0 * h);
        };
        return (ds_at(t - 2 * h) - 8.0 * ds_at(t - h) + 8.0 * ds_at(t + h) -
                ds_at(t + 2 * h)) /
               (12.0 * h);
    };

    SurfacePartials out;
    out.C_s = extrapolate(d1s, hs0, levels);
    out.C_t = extrapolate(d1t, ht0, levels);
    out.C_ss = extrapolate(d2s, hs0, levels);
    out.C_tt = extrapolate(d2t, ht0, levels);
    out.C_st = extrapolate(dst, std::min(hs0, ht0), levels);
    if (!(out.C_s.is_finite() && out.C_t.is_finite() && out.C_ss.is_finite() &&
          out.C_st.is_finite() && out.C_tt.is_finite()))
        throw CanalError(ErrorCode::domain_violation,
                         "numeric stencil produced non-finite derivatives");
    return out;
}

OracleResult oracle_curvatures(const SurfaceFn& P, double s, double t,
                               const StencilConfig& cfg,
                               const std::optional<Vec3>& align_direction) {
    const auto p = numeric_partials(P, s, t, cfg);
    const double E = p.C_s.dot(p.C_s);
    const double F = p.C_s.dot(p.C_t);
    const double G = p.C_t.dot(p.C_t);
    const double area2 = E * G - F * F;
    if (!(area2 > cfg.abs_tol * cfg.abs_tol))
        throw CanalError(ErrorCode::degenerate_first_form,
                         "oracle: numerically degenerate first fundamental form");

    Vec3 n = p.C_s.cross(p.C_t).normalized();
    int sign = +1;
    if (align_direction && n.dot(*align_direction) < 0.0) {
        sign = -1;
        n = -n;
    }
    const double e = p.C_ss.dot(n);
    const double f = p.C_st.dot(n);
    const double g = p.C_tt.dot(n);

    OracleResult out;
    out.K = (e * g - f * f) / area2;
    out.H = (E * g - 2 * F * f + G * e) / (2 * area2);
    out.normal_sign = sign;
    return out;
}

}  // namespace canal
