#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "canal/classify.hpp"
#include "canal/curvature.hpp"
#include "canal/export.hpp"
#include "canal/spec_io.hpp"
#include "canal/verify.hpp"

namespace {

using canal::CanalError;
using canal::ErrorCode;
using nlohmann::json;

// exit codes: 0 ok, 1 usage, 2 invalid spec, 3 domain/degeneracy, 4 verification
// failure, 5 I/O
constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_spec = 2;
constexpr int exit_degenerate = 3;
constexpr int exit_verify = 4;
constexpr int exit_io = 5;

int exit_code_for(const CanalError& e) {
    switch (e.code()) {
        case ErrorCode::invalid_spec: return exit_spec;
        case ErrorCode::io_failure: return exit_io;
        default: return exit_degenerate;
    }
}

double round_digits(double v, int digits) {
    if (digits >= 17 || !std::isfinite(v)) return v;
    return std::stod(canal::format_double(v, digits));
}

json undef_or(const canal::UndefReal& u, int digits) {
    if (u.defined()) return round_digits(u.value(), digits);
    return "undef(" + u.reason() + ")";
}

canal::Tolerances tolerances_from_env() {
    canal::Tolerances tols;
    if (const char* profile = std::getenv("CANAL_TOL_PROFILE")) {
        const std::string p = profile;
        if (p == "strict") {
            tols.eps_deg = 1e-13;
            tols.eps_ii = 1e-10;
            tols.eps_k = 1e-10;
        } else if (p == "loose") {
            tols.eps_deg = 1e-10;
            tols.eps_ii = 1e-7;
            tols.eps_k = 1e-7;
        } else if (p != "default") {
            throw CanalError(ErrorCode::invalid_spec,
                             "CANAL_TOL_PROFILE must be default, strict or loose");
        }
    }
    return tols;
}

struct CommonOpts {
    std::string spec_path;
    int digits = 17;
    double tol_deg = -1.0, tol_ii = -1.0, tol_k = -1.0;

    canal::SurfaceSpec load() const {
        auto spec = canal::load_surface_spec(spec_path);
        const auto env = tolerances_from_env();
        spec.tolerances.eps_deg = tol_deg > 0 ? tol_deg : env.eps_deg;
        spec.tolerances.eps_ii = tol_ii > 0 ? tol_ii : env.eps_ii;
        spec.tolerances.eps_k = tol_k > 0 ? tol_k : env.eps_k;
        return spec;
    }
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool spec_required = true) {
    auto* s = cmd->add_option("--spec", opts.spec_path, "surface spec JSON file");
    if (spec_required) s->required();
    cmd->add_option("--digits", opts.digits, "significant digits for printed numbers")
        ->check(CLI::Range(3, 17));
    cmd->add_option("--tol-deg", opts.tol_deg, "first-form degeneracy threshold");
    cmd->add_option("--tol-ii", opts.tol_ii, "det II threshold for K_II / H_II");
    cmd->add_option("--tol-k", opts.tol_k, "|K| threshold for H_II");
}

int cmd_eval(const CommonOpts& opts, double s, double t, const std::string& format) {
    const auto spec = opts.load();
    spec.surface.validate();
    const auto fc = canal::form_coefficients(spec.surface, s, t);
    const auto sample = canal::curvature_sample(spec.surface, s, t, spec.tolerances);
    const int d = opts.digits;
    if (format == "table") {
        auto line = [&](const char* name, const json& v) {
            std::cout << name << " = " << (v.is_string() ? v.get<std::string>() : v.dump())
                      << '\n';
        };
        line("K", round_digits(sample.K, d));
        line("H", round_digits(sample.H, d));
        line("K_II", undef_or(sample.K_II, d));
        line("H_II", undef_or(sample.H_II, d));
        const std::pair<const char*, double> coeffs[] = {
            {"E", fc.E}, {"F", fc.F}, {"G", fc.G},         {"e", fc.e},
            {"f", fc.f}, {"g", fc.g}, {"EG-F^2", fc.area2}, {"eg-f^2", fc.det2}};
        for (const auto& [n, v] : coeffs) line(n, round_digits(v, d));
        return exit_ok;
    }
    json out;
    out["s"] = s;
    out["t"] = t;
    out["K"] = round_digits(sample.K, d);
    out["H"] = round_digits(sample.H, d);
    out["K_II"] = undef_or(sample.K_II, d);
    out["H_II"] = undef_or(sample.H_II, d);
    out["first_form"] = {{"E", round_digits(fc.E, d)}, {"F", round_digits(fc.F, d)},
                         {"G", round_digits(fc.G, d)}};
    out["second_form"] = {{"e", round_digits(fc.e, d)}, {"f", round_digits(fc.f, d)},
                          {"g", round_digits(fc.g, d)}};
    out["area_element"] = round_digits(fc.area2, d);
    out["det_II"] = round_digits(fc.det2, d);
    std::cout << out.dump(2) << '\n';
    return exit_ok;
}

int cmd_classify(const CommonOpts& opts) {
    const auto spec = opts.load();
    const auto rep = canal::classify(spec.surface);
    json out;
    out["family"] = rep.family;
    out["also_families"] = rep.also_families;
    out["regular"] = rep.regular;
    out["regularity_diagnosis"] = rep.regularity_diagnosis;
    out["first_form_degenerate"] = rep.first_form_degenerate;
    if (rep.first_form_witness) out["first_form_witness_s"] = *rep.first_form_witness;
    out["second_form_degenerate"] = rep.second_form_degenerate;
    out["verdicts"] = {{"flat", canal::to_string(rep.flat)},
                       {"minimal", canal::to_string(rep.minimal)},
                       {"ii_flat", canal::to_string(rep.ii_flat)},
                       {"ii_minimal", canal::to_string(rep.ii_minimal)}};
    out["kappa_max"] = rep.kappa_max;
    out["max_abs"] = {{"K", rep.max_abs_K}, {"H", rep.max_abs_H}};
    if (rep.max_abs_KII) out["max_abs"]["K_II"] = *rep.max_abs_KII;
    out["residual_max"] = {{"flatness", rep.flatness_residual_max},
                           {"minimality", rep.minimal_residual_max},
                           {"ii_flatness", rep.iiflat_residual_max},
                           {"ii_minimality", rep.iiminimal_product_max}};
    if (!rep.notes.empty()) out["notes"] = rep.notes;
    std::cout << out.dump(2) << '\n';
    return exit_ok;
}

int cmd_mesh(const CommonOpts& opts, const std::string& out_path, const std::string& format,
             bool triangles) {
    const auto spec = opts.load();
    const auto grid = canal::sample_grid(spec.surface, spec.grid.ns, spec.grid.nt, {},
                                         spec.tolerances);
    namespace fs = std::filesystem;
    const fs::path base(out_path);
    const fs::path csv_path = fs::path(base).replace_extension(".csv");
    if (format == "obj") {
        canal::ObjOptions obj_opts;
        obj_opts.triangles = triangles;
        obj_opts.digits = opts.digits;
        canal::write_obj(grid, base.string(), obj_opts);
        canal::write_csv(grid, csv_path.string(), opts.digits);
        std::cout << "wrote " << base.string() << " and " << csv_path.string() << '\n';
    } else {
        canal::write_csv(grid, csv_path.string(), opts.digits);
        std::cout << "wrote " << csv_path.string() << '\n';
    }
    return exit_ok;
}

int cmd_verify(const CommonOpts& opts, bool builtin) {
    std::vector<canal::CheckResult> results;
    if (builtin) {
        results = canal::run_builtin_suite();
    } else {
        results = canal::run_spec_suite(opts.load());
    }
    const int failures = canal::print_report(results, std::cout);
    return failures == 0 ? exit_ok : exit_verify;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"canal surface curvature toolkit"};
    app.require_subcommand(1);

    CommonOpts eval_opts, classify_opts, mesh_opts, verify_opts;
    double s = 0.0, t = 0.0;
    std::string eval_format = "json", mesh_format = "obj", out_path;
    bool triangles = false, builtin = false;

    auto* eval = app.add_subcommand("eval", "curvatures and form coefficients at a point");
    add_common(eval, eval_opts);
    eval->add_option("--s", s, "arc-length parameter")->required();
    eval->add_option("--t", t, "angle parameter")->required();
    eval->add_option("--format", eval_format, "json or table")
        ->check(CLI::IsMember({"json", "table"}));

    auto* cls = app.add_subcommand("classify", "degeneracy, regularity and vanishing-curvature report");
    add_common(cls, classify_opts);

    auto* mesh = app.add_subcommand("mesh", "sample a grid and write OBJ + CSV");
    add_common(mesh, mesh_opts);
    mesh->add_option("--out", out_path, "output path (.obj)")->required();
    mesh->add_option("--format", mesh_format, "obj or csv")
        ->check(CLI::IsMember({"obj", "csv"}));
    mesh->add_flag("--triangles", triangles, "split quads into triangles");

    auto* verify = app.add_subcommand("verify", "run the verification suite");
    add_common(verify, verify_opts, false);
    verify->add_flag("--builtin", builtin, "run the built-in five-surface suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (eval->parsed()) return cmd_eval(eval_opts, s, t, eval_format);
        if (cls->parsed()) return cmd_classify(classify_opts);
        if (mesh->parsed()) return cmd_mesh(mesh_opts, out_path, mesh_format, triangles);
        if (verify->parsed()) {
            if (!builtin && verify_opts.spec_path.empty()) {
                std::cerr << "verify needs --builtin or --spec\n";
                return exit_usage;
            }
            return cmd_verify(verify_opts, builtin);
        }
    } catch (const CanalError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}
