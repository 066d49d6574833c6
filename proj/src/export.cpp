#include "canal/export.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>

namespace canal {

std::string format_double(double v, int digits) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, digits);
    return std::string(buf, res.ptr);
}

SurfaceGrid sample_grid(const CanalSurface& M, int ns, int nt,
                        const CurvatureSelection& which, const Tolerances& tols) {
    if (ns < 2 || nt < 3)
        throw CanalError(ErrorCode::domain_violation, "grid needs ns >= 2 and nt >= 3");
    M.validate();

    SurfaceGrid grid;
    grid.ns = ns;
    grid.nt = nt;
    grid.closed_in_t = true;
    grid.s_values.resize(ns);
    grid.t_values.resize(nt);
    for (int i = 0; i < ns; ++i)
        grid.s_values[i] = M.s_min + (M.s_max - M.s_min) * i / (ns - 1);
    for (int j = 0; j < nt; ++j)
        grid.t_values[j] = 2.0 * std::numbers::pi * j / nt;

    grid.positions.reserve(static_cast<size_t>(ns) * nt);
    if (which.K) grid.K.reserve(grid.positions.capacity());
    if (which.H) grid.H.reserve(grid.positions.capacity());
    for (int i = 0; i < ns; ++i) {
        for (int j = 0; j < nt; ++j) {
            const double s = grid.s_values[i], t = grid.t_values[j];
            grid.positions.push_back(surface_point(M, s, t));
            if (which.K) grid.K.push_back(gauss_curvature_closed(M, s, t, tols));
            if (which.H) grid.H.push_back(mean_curvature_closed(M, s, t, tols));
            if (which.K_II) grid.K_II.push_back(kii_closed(M, s, t, KiiVariant::printed, tols));
            if (which.H_II) grid.H_II.push_back(second_mean_curvature(M, s, t, {}, tols));
        }
    }
    return grid;
}

void write_obj(const SurfaceGrid& grid, const std::string& path, const ObjOptions& opts) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw CanalError(ErrorCode::io_failure, "cannot open " + path + " for writing");
    for (const auto& p : grid.positions)
        out << "v " << format_double(p.x, opts.digits) << ' '
            << format_double(p.y, opts.digits) << ' ' << format_double(p.z, opts.digits)
            << '\n';
    const int jmax = opts.weld_t && grid.closed_in_t ? grid.nt : grid.nt - 1;
    for (int i = 0; i + 1 < grid.ns; ++i) {
        for (int j = 0; j < jmax; ++j) {
            const int jn = (j + 1) % grid.nt;
            const int a = grid.index(i, j) + 1;
            const int b = grid.index(i + 1, j) + 1;
            const int c = grid.index(i + 1, jn) + 1;
            const int d = grid.index(i, jn) + 1;
            if (opts.triangles) {
                out << "f " << a << ' ' << b << ' ' << c << '\n';
                out << "f " << a << ' ' << c << ' ' << d << '\n';
            } else {
                out << "f " << a << ' ' << b << ' ' << c << ' ' << d << '\n';
            }
        }
    }
    if (!out)
        throw CanalError(ErrorCode::io_failure, "write failed for " + path);
}

void write_csv(const SurfaceGrid& grid, const std::string& path, int digits) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw CanalError(ErrorCode::io_failure, "cannot open " + path + " for writing");
    out << "s,t,x,y,z,K,H,K_II,H_II\n";
    auto field = [&](const UndefReal& u) {
        return u.defined() ? format_double(u.value(), digits) : std::string("undef");
    };
    for (int i = 0; i < grid.ns; ++i) {
        for (int j = 0; j < grid.nt; ++j) {
            const int idx = grid.index(i, j);
            const auto& p = grid.positions[idx];
            out << format_double(grid.s_values[i], digits) << ','
                << format_double(grid.t_values[j], digits) << ','
                << format_double(p.x, digits) << ',' << format_double(p.y, digits) << ','
                << format_double(p.z, digits) << ','
                << (grid.K.empty() ? "undef" : format_double(grid.K[idx], digits)) << ','
                << (grid.H.empty() ? "undef" : format_double(grid.H[idx], digits)) << ','
                << (grid.K_II.empty() ? "undef" : field(grid.K_II[idx])) << ','
                << (grid.H_II.empty() ? "undef" : field(grid.H_II[idx])) << '\n';
        }
    }
    if (!out)
        throw CanalError(ErrorCode::io_failure, "write failed for " + path);
}

}  // namespace canal
