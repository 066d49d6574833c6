#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "canal/spec_io.hpp"
#include "canal/surface.hpp"

namespace canal {

struct CheckResult {
    std::string name;
    double tolerance = 0.0;  // what `worst` is compared against
    double worst = 0.0;
    bool pass = false;
    std::string note;
};

struct NamedSurface {
    std::string name;
    CanalSurface surface;
};

/// The five reference surfaces: cylinder, cone, torus, helix tube and a
/// variable-radius tube.
std::vector<NamedSurface> builtin_surfaces();

/// Every module's invariants checked against the built-in surfaces.
/// Informational findings (located misprints of the cross-validated
/// coefficient formulas) are reported as passing checks whose note carries
/// the flag; they never silently change a default code path.
std::vector<CheckResult> run_builtin_suite();

/// The per-surface subset of the suite for one parsed spec. Throws if the
/// surface itself is degenerate (|r'| >= 1 on the domain).
std::vector<CheckResult> run_spec_suite(const SurfaceSpec& spec);

/// One line per check; returns the number of failures.
int print_report(const std::vector<CheckResult>& results, std::ostream& out);

}  // namespace canal
