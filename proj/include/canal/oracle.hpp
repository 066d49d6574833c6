#pragma once

#include <functional>
#include <optional>

#include "canal/common.hpp"
#include "canal/surface.hpp"
#include "canal/vec3.hpp"

namespace canal {

using SurfaceFn = std::function<Vec3(double s, double t)>;

/// Finite-difference stencil settings for the brute-force path.
/// richardson_levels = 1 is the plain 4th-order stencil; each extra level
/// halves the step and extrapolates.
struct StencilConfig {
    double step = 1e-3;
    int richardson_levels = 2;
    double rel_tol = 1e-6;
    double abs_tol = 1e-9;
};

/// Partial derivatives of an arbitrary parametrization by 4th-order central
/// differences with Richardson extrapolation. Trusts nothing but point
/// evaluation.
SurfacePartials numeric_partials(const SurfaceFn& P, double s, double t,
                                 const StencilConfig& cfg = {});

struct OracleResult {
    double K = 0.0;
    double H = 0.0;
    int normal_sign = +1;  // sign applied to normalize(C_s x C_t)
};

/// K and H straight from numeric partials. K is invariant under the normal
/// orientation; H is reported in the orientation of `align_direction` when
/// given (for canal surfaces, pass C - alpha to match the radial convention).
OracleResult oracle_curvatures(const SurfaceFn& P, double s, double t,
                               const StencilConfig& cfg = {},
                               const std::optional<Vec3>& align_direction = std::nullopt);

}  // namespace canal
