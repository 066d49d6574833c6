#include "canal/spec_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace canal {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) {
    throw CanalError(ErrorCode::invalid_spec, "invalid spec: " + msg);
}

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& required,
                  const std::set<std::string>& optional = {}) {
    if (!obj.is_object()) bad(where + " must be an object");
    for (const auto& item : obj.items()) {
        if (!required.count(item.key()) && !optional.count(item.key()))
            bad("unknown key \"" + item.key() + "\" in " + where);
    }
    for (const auto& key : required)
        if (!obj.contains(key)) bad(where + " is missing \"" + key + "\"");
}

double number(const json& obj, const std::string& key, const std::string& where) {
    const auto& v = obj.at(key);
    if (!v.is_number()) bad(where + "." + key + " must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) bad(where + "." + key + " must be finite");
    return x;
}

CenterCurve parse_curve(const json& j) {
    if (!j.contains("type") || !j.at("type").is_string()) bad("curve.type must be a string");
    const std::string type = j.at("type").get<std::string>();
    if (type == "line") {
        require_keys(j, "curve", {"type"});
        return CenterCurve::line();
    }
    if (type == "circle") {
        require_keys(j, "curve", {"type", "radius"});
        return CenterCurve::circle(number(j, "radius", "curve"));
    }
    if (type == "helix") {
        require_keys(j, "curve", {"type", "a", "b"});
        return CenterCurve::helix(number(j, "a", "curve"), number(j, "b", "curve"));
    }
    bad("unknown curve type \"" + type + "\"");
}

RadiusFamily parse_radius(const json& j) {
    if (!j.contains("type") || !j.at("type").is_string()) bad("radius.type must be a string");
    const std::string type = j.at("type").get<std::string>();
    if (type == "constant") {
        require_keys(j, "radius", {"type", "c"});
        return RadiusFamily::constant(number(j, "c", "radius"));
    }
    if (type == "linear") {
        require_keys(j, "radius", {"type", "c1", "c2"});
        return RadiusFamily::linear(number(j, "c1", "radius"), number(j, "c2", "radius"));
    }
    if (type == "sqrt_quadratic") {
        require_keys(j, "radius", {"type", "c1", "c2"});
        return RadiusFamily::sqrt_quadratic(number(j, "c1", "radius"),
                                            number(j, "c2", "radius"));
    }
    if (type == "sinusoidal") {
        require_keys(j, "radius", {"type", "offset", "amplitude", "omega"});
        return RadiusFamily::sinusoidal(number(j, "offset", "radius"),
                                        number(j, "amplitude", "radius"),
                                        number(j, "omega", "radius"));
    }
    bad("unknown radius type \"" + type + "\"");
}

}  // namespace

SurfaceSpec parse_surface_spec(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::exception& e) {
        bad(std::string("JSON parse error: ") + e.what());
    }
    require_keys(root, "spec", {"curve", "radius", "domain"},
                 {"q_sign", "grid", "tolerances"});

    SurfaceSpec spec;
    spec.surface.curve = parse_curve(root.at("curve"));
    spec.surface.radius = parse_radius(root.at("radius"));

    const auto& dom = root.at("domain");
    require_keys(dom, "domain", {"s_min", "s_max"});
    spec.surface.s_min = number(dom, "s_min", "domain");
    spec.surface.s_max = number(dom, "s_max", "domain");
    if (!(spec.surface.s_min < spec.surface.s_max)) bad("domain needs s_min < s_max");

    spec.surface.q_sign = +1;
    if (root.contains("q_sign")) {
        const auto& qs = root.at("q_sign");
        if (!qs.is_string() || (qs != "+" && qs != "-")) bad("q_sign must be \"+\" or \"-\"");
        spec.surface.q_sign = qs == "-" ? -1 : +1;
    }
    if (root.contains("grid")) {
        const auto& g = root.at("grid");
        require_keys(g, "grid", {"ns", "nt"});
        const double ns = number(g, "ns", "grid"), nt = number(g, "nt", "grid");
        if (ns != std::floor(ns) || nt != std::floor(nt) || ns < 2 || nt < 3)
            bad("grid needs integer ns >= 2 and nt >= 3");
        spec.grid.ns = static_cast<int>(ns);
        spec.grid.nt = static_cast<int>(nt);
    }
    if (root.contains("tolerances")) {
        const auto& t = root.at("tolerances");
        require_keys(t, "tolerances", {}, {"eps_deg", "eps_ii", "eps_k"});
        if (t.contains("eps_deg")) spec.tolerances.eps_deg = number(t, "eps_deg", "tolerances");
        if (t.contains("eps_ii")) spec.tolerances.eps_ii = number(t, "eps_ii", "tolerances");
        if (t.contains("eps_k")) spec.tolerances.eps_k = number(t, "eps_k", "tolerances");
    }
    return spec;
}

SurfaceSpec load_surface_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw CanalError(ErrorCode::io_failure, "cannot read spec file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_surface_spec(ss.str());
}

}  // namespace canal
