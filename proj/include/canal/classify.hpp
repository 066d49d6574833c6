#pragma once

#include <optional>
#include <string>
#include <vector>

#include "canal/common.hpp"
#include "canal/curvature.hpp"
#include "canal/surface.hpp"

namespace canal {

/// Residual of the flatness ODE r''(r r'' + r'^2 - 1) = 0
/// (solutions: constant and linear radii).
double flatness_residual(const RadiusJet& jet);

/// Residual of the minimality ODE (r r'' + r'^2 - 1)(2r r'' + r'^2 - 1) = 0
/// (real solution: the sqrt-quadratic sphere family).
double minimal_residual(const RadiusJet& jet);

/// Residual of the II-flatness ODE, verbatim:
/// -r r' r'''(r'-1)^2 + r''{ 4r^3 r''^3 + 6r^2 r''^2(r'^2-1)
///   + 2r r''(1 - 3r' + 2r'^4) + r'^2(2r'^2 - r'^3 - 1) } = 0.
double iiflat_residual(const RadiusJet& jet);

/// Factored residual of the II-minimality condition
/// w0 = r^7 (r r'' + r'^2 - 1)^4 W. Zero product means II-minimal
/// (linear and sqrt-quadratic radii).
struct IiMinimalResidual {
    double w0_factor = 0.0;  // r^7 (r r'' + r'^2 - 1)^4
    double W = 0.0;
    double product() const { return w0_factor * W; }
};
IiMinimalResidual iiminimal_residual(const RadiusJet& jet);

enum class Verdict { holds, fails, not_applicable };
const char* to_string(Verdict v);

struct DegeneracyReport {
    bool first_form = false;
    bool second_form = false;
    std::optional<double> first_witness_s;
    std::optional<double> second_witness_s;
    double min_first = 0.0;   // min over s of max over t |EG - F^2|
    double min_second = 0.0;  // min over s of max over t |eg - f^2|
};

/// A form is flagged degenerate when it vanishes along a whole parameter
/// circle: max over t of |det| < tol at some sampled s (so a torus, whose
/// det II vanishes only on isolated t-circles, is not flagged).
/// |r'| >= 1 anywhere flags the first form (Q = 0).
DegeneracyReport degeneracy_check(const CanalSurface& M, int s_samples = 50,
                                  int t_samples = 32, double tol = 1e-10);

struct RegularityReport {
    bool regular = true;
    std::string diagnosis;
};

/// Regular unless the radius is (numerically) r = ±s + c, or the center curve
/// is a line with the sphere-family radius, or the area element collapses.
RegularityReport regularity_check(const CanalSurface& M, int samples = 50,
                                  double tol = 1e-10);

struct ClassifyTolerances {
    double kappa_zero = 1e-10;      // gate: every vanishing condition needs kappa = 0
    double ode = 1e-10;             // residual threshold over sampled s
    double curvature_zero = 1e-9;   // grid |K| consistency for the flat verdict
    double slope_zero = 1e-8;       // constant-radius detection (tube / cylinder)
    double family_residual = 1e-8;  // custom-family structural matching
    double degeneracy = 1e-10;
};

struct ClassificationReport {
    bool first_form_degenerate = false;
    std::optional<double> first_form_witness;
    bool second_form_degenerate = false;
    bool regular = true;
    std::string regularity_diagnosis;

    Verdict flat = Verdict::fails;
    Verdict minimal = Verdict::fails;
    Verdict ii_flat = Verdict::fails;
    Verdict ii_minimal = Verdict::fails;

    std::string family;                     // most specific label
    std::vector<std::string> also_families; // implied labels (tube, surface-of-revolution)

    double kappa_max = 0.0;
    double max_abs_K = 0.0;
    double max_abs_H = 0.0;
    std::optional<double> max_abs_KII;  // over grid points where defined

    double flatness_residual_max = 0.0;
    double minimal_residual_max = 0.0;
    double iiflat_residual_max = 0.0;
    double iiminimal_product_max = 0.0;

    std::vector<std::string> notes;
};

/// Combines the kappa = 0 gate, the four radius-ODE residuals over sampled s,
/// and grid maxima of the curvatures. Q-degenerate inputs (|r'| >= 1) yield
/// not_applicable verdicts. II-flatness additionally requires a constant
/// radius: the II-flat ODE is satisfied by every linear radius, but only the
/// cylinder is II-flat (a cone's second form is degenerate and its K_II
/// numerator vanishes only together with its denominator).
ClassificationReport classify(const CanalSurface& M, const ClassifyTolerances& tols = {},
                              int s_samples = 50, int grid_ns = 20, int grid_nt = 20);

}  // namespace canal
