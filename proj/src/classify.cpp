#include "canal/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace canal {

double flatness_residual(const RadiusJet& j) {
    return j.r2 * (j.r * j.r2 + j.r1 * j.r1 - 1.0);
}

double minimal_residual(const RadiusJet& j) {
    const double a = j.r * j.r2 + j.r1 * j.r1 - 1.0;
    const double b = 2.0 * j.r * j.r2 + j.r1 * j.r1 - 1.0;
    return a * b;
}

double iiflat_residual(const RadiusJet& j) {
    const double r = j.r, r1 = j.r1, r2 = j.r2, r3 = j.r3;
    const double r1sq = r1 * r1;
    const double brace = 4.0 * r * r * r * r2 * r2 * r2 +
                         6.0 * r * r * r2 * r2 * (r1sq - 1.0) +
                         2.0 * r * r2 * (1.0 - 3.0 * r1 + 2.0 * r1sq * r1sq) +
                         r1sq * (2.0 * r1sq - r1sq * r1 - 1.0);
    return -r * r1 * r3 * (r1 - 1.0) * (r1 - 1.0) + r2 * brace;
}

IiMinimalResidual iiminimal_residual(const RadiusJet& j) {
    const double r = j.r, r1 = j.r1, r2 = j.r2, r3 = j.r3, r4 = j.r4;
    const double rm = r1 - 1.0, rp = r1 + 1.0;
    const double r1sq = r1 * r1;

    const double g1 = r * rm * rm * rp * rp *
                      (2.0 * r * r2 * (r * r2 + r1sq - 1.0) * r4 -
                       3.0 * r * (2.0 * r * r2 + r1sq - 1.0) * r3 * r3 -
                       2.0 * r2 * r2 * r2);
    const double g2 = r1 * r2 * rm * rp *
                      (2.0 * r * (8.0 * r * r * r2 * r2 - 2.0 * r1sq + r1sq * r1sq + 1.0) * r3 +
                       r1 * r2 * rm * rm * rp * rp);
    const double g3 = r * r * r2 * r2 * r2 * r2 *
                      (8.0 * r * r * r2 * r2 - 4.0 * r * r2 * (3.0 + r1sq) -
                       20.0 * r1sq + 14.0 * r1sq * r1sq + 6.0);

    IiMinimalResidual out;
    const double quartic = r * r2 + r1sq - 1.0;
    out.w0_factor = std::pow(r, 7) * quartic * quartic * quartic * quartic;
    out.W = g1 + g2 + g3;
    return out;
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::holds: return "holds";
        case Verdict::fails: return "fails";
        default: return "not_applicable";
    }
}

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

bool q_degenerate_anywhere(const CanalSurface& M, int samples, double* witness) {
    for (int i = 0; i <= samples; ++i) {
        const double s = M.s_min + (M.s_max - M.s_min) * i / samples;
        RadiusJet j;
        try {
            j = M.radius.eval(s);
        } catch (const CanalError&) {
            *witness = s;
            return true;
        }
        if (!(std::abs(j.r1) < 1.0)) {
            *witness = s;
            return true;
        }
    }
    return false;
}

}  // namespace

DegeneracyReport degeneracy_check(const CanalSurface& M, int s_samples, int t_samples,
                                  double tol) {
    DegeneracyReport rep;
    rep.min_first = std::numeric_limits<double>::infinity();
    rep.min_second = std::numeric_limits<double>::infinity();
    for (int i = 0; i < s_samples; ++i) {
        const double s = M.s_min + (M.s_max - M.s_min) * (i + 0.5) / s_samples;
        RadiusJet j;
        try {
            j = M.radius.eval(s);
        } catch (const CanalError&) {
            continue;
        }
        if (!(std::abs(j.r1) < 1.0)) {
            // Q = 0: both forms collapse at this s
            if (!rep.first_form) rep.first_witness_s = s;
            if (!rep.second_form) rep.second_witness_s = s;
            rep.first_form = rep.second_form = true;
            rep.min_first = rep.min_second = 0.0;
            continue;
        }
        double max_first = 0.0, max_second = 0.0;
        for (int jj = 0; jj < t_samples; ++jj) {
            const double t = two_pi * (jj + 0.5) / t_samples;
            max_first = std::max(max_first, std::abs(area_element(M, s, t)));
            max_second = std::max(max_second, std::abs(second_form_det(M, s, t)));
        }
        rep.min_first = std::min(rep.min_first, max_first);
        rep.min_second = std::min(rep.min_second, max_second);
        if (max_first < tol && !rep.first_form) {
            rep.first_form = true;
            rep.first_witness_s = s;
        }
        if (max_second < tol && !rep.second_form) {
            rep.second_form = true;
            rep.second_witness_s = s;
        }
    }
    return rep;
}

RegularityReport regularity_check(const CanalSurface& M, int samples, double tol) {
    RegularityReport rep;
    double witness = 0.0;
    if (q_degenerate_anywhere(M, samples, &witness)) {
        rep.regular = false;
        rep.diagnosis = "radius matches r = ±s + c (|r'| >= 1, Q = 0) near s=" +
                        std::to_string(witness);
        return rep;
    }
    // sphere-family exclusion applies on straight (kappa = 0) center curves
    double kappa_max = 0.0, sphere_residual_max = 0.0, min_area = 1e300;
    for (int i = 0; i < samples; ++i) {
        const double s = M.s_min + (M.s_max - M.s_min) * (i + 0.5) / samples;
        kappa_max = std::max(kappa_max, std::abs(M.curve.frenet(s).kappa));
        const RadiusJet j = M.radius.eval(s);
        sphere_residual_max = std::max(sphere_residual_max,
                                       std::abs(j.r * j.r2 + j.r1 * j.r1 - 1.0));
        for (int jj = 0; jj < 8; ++jj)
            min_area = std::min(min_area, area_element(M, s, two_pi * (jj + 0.5) / 8));
    }
    const bool sphere_family =
        (M.curve.is_line() || kappa_max <= tol) && sphere_residual_max <= 1e-8;
    if (sphere_family) {
        rep.regular = false;
        rep.diagnosis = "sphere-family radius r = sqrt(s^2 - 2c1 s + 2c2) on a straight "
                        "center curve";
        return rep;
    }
    if (!(min_area > tol)) {
        rep.regular = false;
        rep.diagnosis = "area element EG - F^2 collapses on the sampled domain";
        return rep;
    }
    rep.diagnosis = "regular";
    return rep;
}

ClassificationReport classify(const CanalSurface& M, const ClassifyTolerances& tols,
                              int s_samples, int grid_ns, int grid_nt) {
    ClassificationReport rep;

    double q_witness = 0.0;
    const bool q_degenerate = q_degenerate_anywhere(M, s_samples, &q_witness);
    if (q_degenerate) {
        rep.first_form_degenerate = true;
        rep.second_form_degenerate = true;
        rep.first_form_witness = q_witness;
        rep.regular = false;
        rep.regularity_diagnosis = "degenerate-Q: |r'| >= 1 on the domain";
        rep.flat = rep.minimal = rep.ii_flat = rep.ii_minimal = Verdict::not_applicable;
        rep.family = M.curve.is_line() ? "surface-of-revolution" : "general";
        rep.notes.push_back("no surface: radius slope reaches ±1, Q vanishes");
        return rep;
    }

    const auto deg = degeneracy_check(M, s_samples, 32, tols.degeneracy);
    rep.first_form_degenerate = deg.first_form;
    rep.first_form_witness = deg.first_witness_s;
    rep.second_form_degenerate = deg.second_form;
    const auto regularity = regularity_check(M, s_samples, tols.degeneracy);
    rep.regular = regularity.regular;
    rep.regularity_diagnosis = regularity.diagnosis;

    // radius-ODE residual maxima and kappa gate over sampled s
    double slope_max = 0.0, r2_max = 0.0;
    for (int i = 0; i < s_samples; ++i) {
        const double s = M.s_min + (M.s_max - M.s_min) * (i + 0.5) / s_samples;
        const RadiusJet j = M.radius.eval(s);
        const FrenetData fr = M.curve.frenet(s);
        rep.kappa_max = std::max(rep.kappa_max, std::abs(fr.kappa));
        slope_max = std::max(slope_max, std::abs(j.r1));
        r2_max = std::max(r2_max, std::abs(j.r2));
        rep.flatness_residual_max =
            std::max(rep.flatness_residual_max, std::abs(flatness_residual(j)));
        rep.minimal_residual_max =
            std::max(rep.minimal_residual_max, std::abs(minimal_residual(j)));
        rep.iiflat_residual_max =
            std::max(rep.iiflat_residual_max, std::abs(iiflat_residual(j)));
        rep.iiminimal_product_max =
            std::max(rep.iiminimal_product_max, std::abs(iiminimal_residual(j).product()));
    }
    const bool kappa_zero = rep.kappa_max <= tols.kappa_zero;

    // grid curvature maxima (closed paths; structural zeros included)
    Tolerances ct;
    for (int i = 0; i < grid_ns; ++i) {
        const double s = M.s_min + (M.s_max - M.s_min) * (i + 0.5) / grid_ns;
        for (int jj = 0; jj < grid_nt; ++jj) {
            const double t = two_pi * jj / grid_nt;
            rep.max_abs_K = std::max(rep.max_abs_K,
                                     std::abs(gauss_curvature_closed(M, s, t, ct)));
            rep.max_abs_H = std::max(rep.max_abs_H,
                                     std::abs(mean_curvature_closed(M, s, t, ct)));
            const auto kii = kii_closed(M, s, t, KiiVariant::printed, ct);
            if (kii.defined()) {
                const double v = std::abs(kii.value());
                rep.max_abs_KII = std::max(rep.max_abs_KII.value_or(0.0), v);
            }
        }
    }

    const bool constant_radius = slope_max <= tols.slope_zero;
    rep.flat = (kappa_zero && rep.flatness_residual_max <= tols.ode &&
                rep.max_abs_K <= tols.curvature_zero)
                   ? Verdict::holds
                   : Verdict::fails;
    rep.minimal = (kappa_zero && rep.minimal_residual_max <= tols.ode) ? Verdict::holds
                                                                       : Verdict::fails;
    rep.ii_flat = (kappa_zero && rep.iiflat_residual_max <= tols.ode && constant_radius)
                      ? Verdict::holds
                      : Verdict::fails;
    rep.ii_minimal = (kappa_zero && rep.iiminimal_product_max <= tols.ode)
                         ? Verdict::holds
                         : Verdict::fails;
    if (kappa_zero && rep.iiflat_residual_max <= tols.ode && !constant_radius)
        rep.notes.push_back(
            "II-flat ODE residual vanishes (it does for every linear radius) but only "
            "the constant radius gives a II-flat surface; verdict follows the cylinder "
            "characterization");

    // family labels: structural for built-ins, residual-based for custom radii
    const bool line = M.curve.is_line();
    const auto kind = M.radius.kind();
    const bool is_constant =
        kind == RadiusFamily::Kind::constant ||
        (kind == RadiusFamily::Kind::custom && constant_radius);
    const bool is_linear =
        (kind == RadiusFamily::Kind::linear && std::abs(M.radius.param(0)) > 0.0) ||
        (kind == RadiusFamily::Kind::custom && !constant_radius &&
         r2_max <= tols.family_residual);
    const bool is_sphere =
        kind == RadiusFamily::Kind::sqrt_quadratic ||
        (kind == RadiusFamily::Kind::custom && rep.minimal_residual_max <= tols.family_residual &&
         !constant_radius && !is_linear);
    if (line && is_constant) {
        rep.family = "cylinder";
        rep.also_families = {"tube", "surface-of-revolution"};
    } else if (line && is_linear) {
        rep.family = "cone";
        rep.also_families = {"surface-of-revolution"};
    } else if (line && is_sphere) {
        rep.family = "sphere-family";
        rep.also_families = {"surface-of-revolution"};
    } else if (is_constant) {
        rep.family = "tube";
    } else if (line) {
        rep.family = "surface-of-revolution";
    } else {
        rep.family = "general";
    }
    return rep;
}

}  // namespace canal
