#include <doctest.h>

#include <cmath>
#include <numbers>

#include "canal/curvature.hpp"
#include "canal/oracle.hpp"
#include "canal/trigfit.hpp"
#include "support.hpp"

using namespace canal;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("Gaussian curvature values") {
    const auto cyl = testsupport::cylinder();
    CHECK(gauss_curvature_closed(cyl, 1.0, 0.7) == 0.0);
    CHECK(gauss_curvature(form_coefficients(cyl, 1.0, 0.7)) == 0.0);

    const auto cone = testsupport::cone();
    CHECK(std::abs(gauss_curvature_closed(cone, 1.5, 2.0)) < 1e-15);

    const auto tor = testsupport::torus();
    CHECK(gauss_curvature_closed(tor, 0.0, 0.0) == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(gauss_curvature_closed(tor, 1.0, pi) == doctest::Approx(-0.5).epsilon(1e-13));
    CHECK(gauss_curvature(form_coefficients(tor, 0.0, 0.0)) ==
          doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("mean curvature values") {
    const auto cyl2 = testsupport::cylinder(2.0);
    CHECK(mean_curvature(form_coefficients(cyl2, 1.0, 0.3)) ==
          doctest::Approx(-0.25).epsilon(1e-14));
    CHECK(mean_curvature_closed(cyl2, 1.0, 0.3) == doctest::Approx(-0.25).epsilon(1e-14));

    const auto tor = testsupport::torus();
    CHECK(mean_curvature_closed(tor, 0.0, 0.0) == doctest::Approx(-0.625).epsilon(1e-13));
}

TEST_CASE("both K and H routes agree everywhere defined") {
    const CanalSurface surfaces[] = {testsupport::cylinder(), testsupport::cone(),
                                     testsupport::torus(), testsupport::helix_tube()};
    for (const auto& M : surfaces) {
        for (double frac : {0.1, 0.5, 0.9}) {
            const double s = M.s_min + frac * (M.s_max - M.s_min);
            for (double t : {0.0, 0.9, 2.3, 4.8}) {
                const auto fc = form_coefficients(M, s, t);
                CHECK(gauss_curvature(fc) ==
                      doctest::Approx(gauss_curvature_closed(M, s, t)).epsilon(1e-11).scale(1));
                CHECK(mean_curvature(fc) ==
                      doctest::Approx(mean_curvature_closed(M, s, t)).epsilon(1e-11).scale(1));
            }
        }
    }
}

TEST_CASE("the sphere family is degenerate with vanishing K and H") {
    const auto sphere = testsupport::sphere_family();
    CHECK_THROWS_AS(gauss_curvature(form_coefficients(sphere, 1.0, 0.5)), CanalError);
    for (double s : {0.1, 0.7, 1.5, 2.0}) {
        for (double t : {0.3, 2.1, 4.0}) {
            CHECK(gauss_curvature_closed(sphere, s, t) == 0.0);
            CHECK(mean_curvature_closed(sphere, s, t) == 0.0);
        }
    }
}

TEST_CASE("Brioschi second Gaussian curvature") {
    const auto cyl = testsupport::cylinder();
    const auto undef = brioschi_kii(cyl, 1.0, 0.5);
    CHECK_FALSE(undef.defined());

    const auto tor = testsupport::torus();
    const auto k2_0 = brioschi_kii(tor, 0.4, 0.0);
    REQUIRE(k2_0.defined());
    CHECK(k2_0.value() == doctest::Approx(-0.625).epsilon(1e-7));
    CHECK(k2_0.value() ==
          doctest::Approx(testsupport::tube_kii(1.0, 1.0 / 3.0, 0.0, 0.0)).epsilon(1e-7));

    // undefined on the parabolic circles where det II -> 0
    CHECK_FALSE(brioschi_kii(tor, 0.4, pi / 2).defined());
}

TEST_CASE("coefficient path equals the Brioschi path") {
    const auto tor = testsupport::torus();
    const auto helix = testsupport::helix_tube();
    for (const auto& M : {tor, helix}) {
        for (double s : {0.4, 1.7}) {
            for (double t : {0.3, 1.0, 2.2, 4.0, 5.9}) {
                if (std::abs(second_form_det(M, s, t)) < 1e-6) continue;
                const auto b = brioschi_kii(M, s, t);
                const auto c = kii_closed(M, s, t);
                REQUIRE(b.defined());
                REQUIRE(c.defined());
                CHECK(b.value() == doctest::Approx(c.value()).epsilon(1e-5));
            }
        }
    }
    // tube oracle for the helix tube
    const auto c1 = kii_closed(helix, 1.0, 1.0);
    CHECK(c1.value() ==
          doctest::Approx(testsupport::tube_kii(0.5, 0.4, 0.2, 1.0)).epsilon(1e-12));
}

TEST_CASE("denominator convention toggle") {
    // with f != 0 and eg < 0 the printed |eg| variant differs from the default
    const auto helix = testsupport::helix_tube();
    const auto std_den = brioschi_kii(helix, 1.0, 2.5);
    const auto abs_den = brioschi_kii(helix, 1.0, 2.5, {}, BrioschiDenominator::printed_abs);
    REQUIRE(std_den.defined());
    REQUIRE(abs_den.defined());
    CHECK(std_den.value() != abs_den.value());
    // the default is the one consistent with the coefficient path
    CHECK(std_den.value() ==
          doctest::Approx(kii_closed(helix, 1.0, 2.5).value()).epsilon(1e-6));
}

TEST_CASE("printed n2 deviates where r' != 0 and the corrected variant repairs it") {
    const auto vt = CanalSurface::make(CenterCurve::circle(3.0),
                                       RadiusFamily::sinusoidal(1.0, 0.2, 1.0), +1, 0.0,
                                       2 * pi);
    double worst_printed = 0.0, worst_corrected = 0.0;
    for (double s : {0.3, 1.1, 2.7}) {
        for (double t : {0.4, 1.2, 3.5, 5.0}) {
            if (std::abs(second_form_det(vt, s, t)) < 1e-6) continue;
            const double b = brioschi_kii(vt, s, t).value();
            const double cp = kii_closed(vt, s, t, KiiVariant::printed).value();
            const double cc = kii_closed(vt, s, t, KiiVariant::corrected).value();
            worst_printed = std::max(worst_printed, std::abs(b - cp) / std::abs(b));
            worst_corrected = std::max(worst_corrected, std::abs(b - cc) / std::abs(b));
        }
    }
    CHECK(worst_printed > 1e-4);     // the misprint is visible...
    CHECK(worst_corrected < 1e-5);   // ...and the one-sign fix removes it
}

TEST_CASE("varying curvature exercises the kappa' terms") {
    // planar unit-speed curve with kappa(s) = 0.3 + 0.1 s; only the frame is
    // needed here (the coefficient paths never evaluate the position)
    CustomCurve planar;
    planar.position = [](double) { return Vec3{}; };
    planar.frenet = [](double s) {
        const double th = 0.3 * s + 0.05 * s * s;
        FrenetData f;
        f.T = {std::cos(th), std::sin(th), 0.0};
        f.N = {-std::sin(th), std::cos(th), 0.0};
        f.B = f.T.cross(f.N);
        f.kappa = 0.3 + 0.1 * s;
        f.kappa_prime = 0.1;
        return f;
    };
    const CanalSurface M{CenterCurve::custom(planar, {0.0, 4.0}),
                         RadiusFamily::sinusoidal(0.8, 0.1, 1.0), +1, 0.1, 3.9};
    double worst_printed = 0.0, worst_corrected = 0.0;
    for (double s : {0.4, 1.1, 2.3, 3.4}) {
        for (double t : {0.3, 1.0, 2.4, 3.6, 5.1}) {
            if (std::abs(second_form_det(M, s, t)) < 1e-6) continue;
            const double b = brioschi_kii(M, s, t).value();
            const double cp = kii_closed(M, s, t, KiiVariant::printed).value();
            const double cc = kii_closed(M, s, t, KiiVariant::corrected).value();
            worst_printed = std::max(worst_printed, std::abs(b - cp) / std::abs(b));
            worst_corrected = std::max(worst_corrected, std::abs(b - cc) / std::abs(b));
        }
    }
    CHECK(worst_printed > 1e-4);    // the dropped factor 4 in the kappa' term shows
    CHECK(worst_corrected < 1e-5);
}

TEST_CASE("torus numerator coefficients") {
    const auto tor = testsupport::torus();
    const auto c = kii_coefficients(tor, 1.0);
    CHECK(c.n[3].constant == doctest::Approx(-2.0 / 9.0).epsilon(1e-15));
    CHECK(c.n[4].constant == doctest::Approx(-4.0 / 81.0).epsilon(1e-15));
    CHECK(c.n[0].constant == doctest::Approx(-1.0 / 9.0).epsilon(1e-15));
    CHECK(c.n[2].constant == doctest::Approx(-1.0 / 9.0).epsilon(1e-15));
    CHECK(c.n[1].constant == 0.0);
    CHECK(c.n[0].sin_t == 0.0);
}

TEST_CASE("straight center curves zero out n1..n4") {
    const CanalSurface line_sin{CenterCurve::line(), RadiusFamily::sinusoidal(1.0, 0.2, 1.0),
                                +1, 0.0, 2 * pi};
    for (double s : {0.4, 1.9, 4.0}) {
        const auto c = kii_coefficients(line_sin, s);
        for (int i = 1; i <= 4; ++i) {
            CHECK(c.n[i].constant == 0.0);
            CHECK(c.n[i].sin_t == 0.0);
        }
    }
    const auto cone = testsupport::cone();
    const auto c = kii_coefficients(cone, 1.0);
    CHECK(c.max_abs() < 1e-15);  // linear radius: the whole numerator vanishes
}

TEST_CASE("closed K_II handles structural zeros") {
    const auto cyl = testsupport::cylinder();
    const auto v = kii_closed(cyl, 1.0, 2.0);
    REQUIRE(v.defined());
    CHECK(v.value() == 0.0);
    // non-structural zero of det II stays undefined
    const auto tor = testsupport::torus();
    CHECK_FALSE(kii_closed(tor, 0.4, pi / 2).defined());
}

TEST_CASE("second mean curvature") {
    const auto cyl = testsupport::cylinder();
    const auto undef = second_mean_curvature(cyl, 1.0, 0.5);
    CHECK_FALSE(undef.defined());
    CHECK(undef.reason().find("det II") != std::string::npos);

    const auto tor = testsupport::torus();
    const auto h2 = second_mean_curvature(tor, 0.4, 0.0);
    REQUIRE(h2.defined());
    CHECK(h2.value() == doctest::Approx(-0.8125).epsilon(1e-10));

    // tube oracle across the cos t > 0 branch, helix tube included
    const auto helix = testsupport::helix_tube();
    for (double t : {0.2, 0.8, 1.25}) {
        const auto v = second_mean_curvature(helix, 1.0, t);
        REQUIRE(v.defined());
        CHECK(v.value() ==
              doctest::Approx(testsupport::tube_hii(0.5, 0.4, 0.2, t)).epsilon(1e-8));
    }

    // nested finite differences replicate the closed gradient path
    const auto a = second_mean_curvature(tor, 0.4, 0.9, {1e-4, false});
    const auto b = second_mean_curvature(tor, 0.4, 0.9, {1e-4, true});
    REQUIRE(a.defined());
    REQUIRE(b.defined());
    CHECK(a.value() == doctest::Approx(b.value()).epsilon(1e-6));

    // step halving stability
    const auto c = second_mean_curvature(tor, 0.4, 0.9, {5e-5, false});
    CHECK(std::abs(a.value() - c.value()) / std::abs(c.value()) < 1e-3);
}

TEST_CASE("w10") {
    const auto tor = testsupport::torus();
    CHECK(w10_coefficient(tor, 1.0) == doctest::Approx(8.0 / 59049.0).epsilon(1e-14));
    const auto helix = testsupport::helix_tube();
    CHECK(w10_coefficient(helix, 1.0) == doctest::Approx(2.56e-8).epsilon(1e-12));
    CHECK(w10_coefficient(testsupport::cylinder(), 1.0) == 0.0);
}

TEST_CASE("H_II numerator fit recovers w10 on the torus") {
    const auto tor = testsupport::torus();
    const double s0 = 0.4;
    auto product = [&](double t) {
        const double Mdet = area_element(tor, s0, t);
        const double Ndet = second_form_det(tor, s0, t);
        return -8.0 * Mdet * Mdet * Mdet * Ndet * Ndet *
               second_mean_curvature(tor, s0, t).value();  // r = 1
    };
    const auto fit = fit_trig_polynomial(product, 10);
    CHECK(fit.a[10] == doctest::Approx(w10_coefficient(tor, s0)).epsilon(1e-6));
}

TEST_CASE("the r^2 factor of the H_II normalization is spurious") {
    // tau = 0 tube with r != 1 separates the two normalizations: without r^2
    // the leading coefficient equals w10, with it the ratio is exactly r^2.
    const auto tube = CanalSurface::make(CenterCurve::circle(3.0),
                                         RadiusFamily::constant(0.5), +1, 0.0, 2 * pi);
    const double s0 = 0.4, r = 0.5;
    auto product_no_r2 = [&](double t) {
        const double Mdet = area_element(tube, s0, t);
        const double Ndet = second_form_det(tube, s0, t);
        return -8.0 * Mdet * Mdet * Mdet * Ndet * Ndet *
               second_mean_curvature(tube, s0, t).value();
    };
    const auto fit = fit_trig_polynomial(product_no_r2, 10);
    const double w10 = w10_coefficient(tube, s0);
    CHECK(fit.a[10] == doctest::Approx(w10).epsilon(1e-6));

    auto product_with_r2 = [&](double t) { return r * r * product_no_r2(t); };
    const auto fit2 = fit_trig_polynomial(product_with_r2, 10);
    CHECK(fit2.a[10] / w10 == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("K times the area element reproduces det II") {
    for (const auto& M : {testsupport::torus(), testsupport::helix_tube()}) {
        for (double s : {0.5, 1.8}) {
            for (double t : {0.2, 1.3, 2.8, 4.9}) {
                const auto fc = form_coefficients(M, s, t);
                const double K = gauss_curvature(fc);
                CHECK(K * fc.area2 == doctest::Approx(fc.det2).epsilon(1e-10).scale(1));
            }
        }
    }
}

TEST_CASE("the negative Q branch stays consistent") {
    const auto M = CanalSurface::make(CenterCurve::circle(3.0),
                                      RadiusFamily::sinusoidal(1.0, 0.2, 1.0), -1, 0.0,
                                      2 * pi);
    for (double s : {0.7, 2.4}) {
        for (double t : {0.4, 1.5, 3.9}) {
            // closed forms still match the exact partials
            const auto fc = form_coefficients(M, s, t);
            const auto p = surface_partials(M, s, t);
            const Vec3 n = unit_normal(M, s, t);
            CHECK(fc.E == doctest::Approx(p.C_s.dot(p.C_s)).epsilon(1e-12));
            CHECK(fc.e == doctest::Approx(p.C_ss.dot(n)).epsilon(1e-12).scale(1));
            // and the oracle agrees on both curvatures
            const Vec3 radial = surface_point(M, s, t) - M.curve.position(s);
            const auto o = oracle_curvatures(
                [&](double ss, double tt) { return surface_point(M, ss, tt); }, s, t, {},
                radial);
            CHECK(o.K == doctest::Approx(gauss_curvature_closed(M, s, t)).epsilon(1e-5).scale(1e-3));
            CHECK(o.H == doctest::Approx(mean_curvature_closed(M, s, t)).epsilon(1e-5));
            // both K_II routes agree on the flipped branch too
            if (std::abs(second_form_det(M, s, t)) > 1e-6) {
                const auto b = brioschi_kii(M, s, t);
                const auto c = kii_closed(M, s, t, KiiVariant::corrected);
                CHECK(b.value() == doctest::Approx(c.value()).epsilon(1e-5));
            }
        }
    }
}

TEST_CASE("closed log-curvature gradient matches nested differencing off tubes") {
    // s-dependent radius: the s-part of the divergence field is live here
    const auto M = CanalSurface::make(CenterCurve::circle(3.0),
                                      RadiusFamily::sinusoidal(1.0, 0.2, 1.0), +1, 0.0,
                                      2 * pi);
    for (double s : {0.8, 2.1, 4.4}) {
        for (double t : {0.4, 1.1, 5.3}) {
            const auto semi = second_mean_curvature(M, s, t, {1e-4, false});
            const auto nested = second_mean_curvature(M, s, t, {1e-4, true});
            if (!semi.defined() || !nested.defined()) continue;
            CHECK(semi.value() == doctest::Approx(nested.value()).epsilon(1e-5));
        }
    }
}

TEST_CASE("curvature sample aggregates the four curvatures") {
    const auto tor = testsupport::torus();
    const auto s = curvature_sample(tor, 0.0, 0.0);
    CHECK(s.K == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(s.H == doctest::Approx(-0.625).epsilon(1e-13));
    REQUIRE(s.K_II.defined());
    CHECK(s.K_II.value() == doctest::Approx(-0.625).epsilon(1e-10));
    REQUIRE(s.H_II.defined());
    CHECK(s.H_II.value() == doctest::Approx(-0.8125).epsilon(1e-10));
}
