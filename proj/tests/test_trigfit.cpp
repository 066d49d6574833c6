#include <doctest.h>

#include <cmath>
#include <random>

#include "canal/curvature.hpp"
#include "canal/trigfit.hpp"
#include "support.hpp"

using namespace canal;

TEST_CASE("constant functions fit exactly") {
    const auto fit = fit_trig_polynomial([](double) { return 5.0; }, 3);
    CHECK(fit.a[0] == doctest::Approx(5.0).epsilon(1e-14));
    for (int i = 1; i <= 3; ++i) CHECK(std::abs(fit.a[i]) < 1e-13);
    for (int i = 0; i <= 3; ++i) CHECK(std::abs(fit.b[i]) < 1e-13);
    CHECK(fit.max_residual < 1e-13);
}

TEST_CASE("random low-degree models are recovered exactly") {
    std::mt19937 gen(5);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 5; ++trial) {
        TrigPolynomial model;
        model.degree = 6;
        model.a.resize(7);
        model.b.resize(7);
        for (int i = 0; i <= 6; ++i) {
            model.a[i] = u(gen);
            model.b[i] = u(gen);
        }
        const auto fit =
            fit_trig_polynomial([&](double t) { return model.eval(t); }, 6);
        for (int i = 0; i <= 6; ++i) {
            CHECK(fit.a[i] == doctest::Approx(model.a[i]).epsilon(1e-10).scale(1));
            CHECK(fit.b[i] == doctest::Approx(model.b[i]).epsilon(1e-10).scale(1));
        }
        CHECK(fit.max_residual < 1e-10);
    }
}

TEST_CASE("torus Gaussian-curvature numerator has the expected coefficients") {
    const auto tor = testsupport::torus();
    const double s0 = 0.9;
    auto fn = [&](double t) {
        return gauss_curvature_closed(tor, s0, t) * area_element(tor, s0, t);
    };  // r = Q = 1 on the torus, so no rescaling is needed
    const auto fit = fit_trig_polynomial(fn, 2);
    CHECK(fit.a[2] == doctest::Approx(1.0 / 9.0).epsilon(1e-10));
    CHECK(fit.a[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    CHECK(std::abs(fit.a[0]) < 1e-12);
    for (int i = 0; i <= 2; ++i) CHECK(std::abs(fit.b[i]) < 1e-12);
    CHECK(fit.max_residual < 1e-10);
}

TEST_CASE("unmodellable harmonics show up in the residual") {
    const auto fit = fit_trig_polynomial([](double t) { return std::cos(12 * t); }, 4);
    CHECK(fit.max_residual > 0.5);
}

TEST_CASE("error paths") {
    CHECK_THROWS_AS(fit_trig_polynomial([](double) { return 0.0; }, 4, 10), CanalError);
    CHECK_THROWS_AS(
        fit_trig_polynomial([](double) { return std::nan(""); }, 2), CanalError);
}
