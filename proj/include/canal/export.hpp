#pragma once

#include <string>
#include <vector>

#include "canal/common.hpp"
#include "canal/curvature.hpp"
#include "canal/surface.hpp"
#include "canal/vec3.hpp"

namespace canal {

struct CurvatureSelection {
    bool K = true, H = true, K_II = true, H_II = true;
};

/// ns x nt vertex grid, s-major. s spans [s_min, s_max] inclusive; t spans
/// [0, 2pi) half-open, so the surface closes across the t seam.
struct SurfaceGrid {
    int ns = 0, nt = 0;
    bool closed_in_t = true;
    std::vector<double> s_values, t_values;
    std::vector<Vec3> positions;
    std::vector<double> K, H;            // empty when not selected
    std::vector<UndefReal> K_II, H_II;   // empty when not selected

    int index(int i, int j) const { return i * nt + j; }
};

/// Errors if the surface fails validation (degenerate Q on the domain).
SurfaceGrid sample_grid(const CanalSurface& M, int ns, int nt,
                        const CurvatureSelection& which = {}, const Tolerances& tols = {});

struct ObjOptions {
    bool triangles = false;  // split quads
    bool weld_t = true;      // faces wrap across the t seam
    int digits = 17;
};

/// Wavefront OBJ, v/f records only. Curvature fields go to the CSV sidecar,
/// never into the OBJ.
void write_obj(const SurfaceGrid& grid, const std::string& path, const ObjOptions& opts = {});

/// CSV with header s,t,x,y,z,K,H,K_II,H_II; undefined entries as the literal
/// token `undef`; byte-stable for fixed inputs.
void write_csv(const SurfaceGrid& grid, const std::string& path, int digits = 17);

/// Locale-independent shortest-general formatting at the given significant digits.
std::string format_double(double v, int digits);

}  // namespace canal
