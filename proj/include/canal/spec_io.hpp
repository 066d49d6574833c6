#pragma once

#include <string>

#include "canal/common.hpp"
#include "canal/surface.hpp"

namespace canal {

struct GridSpec {
    int ns = 20;
    int nt = 20;
};

/// Parsed surface description. The contained surface is NOT validated, so a
/// degenerate spec can still be classified; call surface.validate() before
/// evaluation or meshing.
struct SurfaceSpec {
    CanalSurface surface;
    GridSpec grid;
    Tolerances tolerances;
};

/// Strict JSON schema:
/// {
///   "curve":  {"type":"line"} | {"type":"circle","radius":a}
///           | {"type":"helix","a":a,"b":b},
///   "radius": {"type":"constant","c":c} | {"type":"linear","c1":c1,"c2":c2}
///           | {"type":"sqrt_quadratic","c1":c1,"c2":c2}
///           | {"type":"sinusoidal","offset":p,"amplitude":q,"omega":w},
///   "q_sign": "+" | "-",                      (optional, default "+")
///   "domain": {"s_min":a,"s_max":b},
///   "grid":   {"ns":n,"nt":m},                (optional, default 20x20)
///   "tolerances": {"eps_deg":..,"eps_ii":..,"eps_k":..}   (optional)
/// }
/// Unknown keys anywhere are rejected (invalid_spec).
SurfaceSpec parse_surface_spec(const std::string& json_text);

/// Reads and parses; io_failure when the file cannot be read.
SurfaceSpec load_surface_spec(const std::string& path);

}  // namespace canal
