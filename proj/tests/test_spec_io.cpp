#include <doctest.h>

#include "canal/spec_io.hpp"

using namespace canal;

namespace {

const char* torus_spec = R"({
  "curve": {"type": "circle", "radius": 3.0},
  "radius": {"type": "constant", "c": 1.0},
  "domain": {"s_min": 0.0, "s_max": 6.283185307179586},
  "grid": {"ns": 8, "nt": 8}
})";

}  // namespace

TEST_CASE("valid specs parse") {
    const auto spec = parse_surface_spec(torus_spec);
    CHECK(spec.surface.curve.kind() == CenterCurve::Kind::circle);
    CHECK(spec.surface.radius.kind() == RadiusFamily::Kind::constant);
    CHECK(spec.surface.q_sign == +1);
    CHECK(spec.grid.ns == 8);
    CHECK(spec.surface.s_max > 6.28);
    CHECK_NOTHROW(spec.surface.validate());

    const auto helix = parse_surface_spec(R"({
      "curve": {"type": "helix", "a": 2.0, "b": 1.0},
      "radius": {"type": "sinusoidal", "offset": 0.5, "amplitude": 0.1, "omega": 1.0},
      "q_sign": "-",
      "domain": {"s_min": 0.0, "s_max": 6.0},
      "tolerances": {"eps_ii": 1e-8}
    })");
    CHECK(helix.surface.q_sign == -1);
    CHECK(helix.tolerances.eps_ii == 1e-8);
    CHECK(helix.tolerances.eps_deg == 1e-12);  // untouched default
}

TEST_CASE("schema violations are rejected") {
    auto expect_invalid = [](const char* text) {
        try {
            parse_surface_spec(text);
            FAIL_CHECK("expected invalid_spec for: ", text);
        } catch (const CanalError& e) {
            CHECK(e.code() == ErrorCode::invalid_spec);
        }
    };
    expect_invalid("{not json");
    expect_invalid(R"({"curve": {"type":"line"}, "radius": {"type":"constant","c":1}})");
    expect_invalid(R"({
      "curve": {"type":"line"}, "radius": {"type":"constant","c":1},
      "domain": {"s_min":0,"s_max":1}, "unexpected": 1})");
    expect_invalid(R"({
      "curve": {"type":"line","extra":2}, "radius": {"type":"constant","c":1},
      "domain": {"s_min":0,"s_max":1}})");
    expect_invalid(R"({
      "curve": {"type":"dodecahedron"}, "radius": {"type":"constant","c":1},
      "domain": {"s_min":0,"s_max":1}})");
    expect_invalid(R"({
      "curve": {"type":"line"}, "radius": {"type":"constant","c":"one"},
      "domain": {"s_min":0,"s_max":1}})");
    expect_invalid(R"({
      "curve": {"type":"line"}, "radius": {"type":"constant","c":1},
      "domain": {"s_min":1,"s_max":0}})");
    expect_invalid(R"({
      "curve": {"type":"line"}, "radius": {"type":"constant","c":1},
      "domain": {"s_min":0,"s_max":1}, "grid": {"ns":1,"nt":4}})");
    expect_invalid(R"({
      "curve": {"type":"line"}, "radius": {"type":"constant","c":1},
      "domain": {"s_min":0,"s_max":1}, "q_sign": "x"})");
}

TEST_CASE("missing files raise io errors") {
    try {
        load_surface_spec("/nonexistent/spec.json");
        FAIL_CHECK("expected io_failure");
    } catch (const CanalError& e) {
        CHECK(e.code() == ErrorCode::io_failure);
    }
}

TEST_CASE("degenerate specs parse but fail validation") {
    const auto spec = parse_surface_spec(R"({
      "curve": {"type":"line"},
      "radius": {"type":"linear","c1":1.0,"c2":1.0},
      "domain": {"s_min":0,"s_max":2}
    })");
    CHECK_THROWS_AS(spec.surface.validate(), CanalError);
}
