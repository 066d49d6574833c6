#include "canal/trigfit.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace canal {

namespace {

// Monomial coefficient tables of Chebyshev T_n / U_n via the shared recurrence
// P_{n+1} = 2x P_n - P_{n-1}. Coefficients are exact integers well below 2^53.
std::vector<std::vector<double>> chebyshev_table(int nmax, bool second_kind) {
    std::vector<std::vector<double>> P(nmax + 1);
    P[0] = {1.0};
    if (nmax >= 1) P[1] = second_kind ? std::vector<double>{0.0, 2.0}
                                      : std::vector<double>{0.0, 1.0};
    for (int n = 2; n <= nmax; ++n) {
        P[n].assign(n + 1, 0.0);
        for (int i = 0; i + 1 <= n; ++i) P[n][i + 1] += 2.0 * P[n - 1][i];
        for (size_t i = 0; i < P[n - 2].size(); ++i) P[n][i] -= P[n - 2][i];
    }
    return P;
}

}  // namespace

double TrigPolynomial::eval(double t) const {
    const double c = std::cos(t), st = std::sin(t);
    double A = 0.0, B = 0.0;
    for (int i = degree; i >= 0; --i) {
        A = A * c + a[i];
        B = B * c + b[i];
    }
    return A + st * B;
}

double TrigPolynomial::max_coeff_above(int deg) const {
    double m = 0.0;
    for (int i = deg + 1; i <= degree; ++i)
        m = std::max({m, std::abs(a[i]), std::abs(b[i])});
    return m;
}

double TrigPolynomial::max_abs_coeff() const {
    double m = 0.0;
    for (int i = 0; i <= degree; ++i) m = std::max({m, std::abs(a[i]), std::abs(b[i])});
    return m;
}

TrigPolynomial fit_trig_polynomial(const std::function<double(double)>& fn, int degree,
                                   int samples) {
    if (degree < 0)
        throw CanalError(ErrorCode::domain_violation, "fit degree must be >= 0");
    const int min_samples = 2 * (degree + 1) + 4;
    if (samples == 0) {
        samples = 2 * (degree + 1) + 8;
        samples += (4 - samples % 4) % 4;  // multiple of 4 dodges t = pi/2 poles
    }
    if (samples < min_samples)
        throw CanalError(ErrorCode::rank_deficient_fit,
                         "fit needs at least " + std::to_string(min_samples) +
                             " samples, got " + std::to_string(samples));

    const int N = samples;
    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<double> ts(N), h(N);
    for (int j = 0; j < N; ++j) {
        ts[j] = two_pi * (j + 0.5) / N;
        h[j] = fn(ts[j]);
        if (!std::isfinite(h[j]))
            throw CanalError(ErrorCode::domain_violation,
                             "fit sample not finite at t=" + std::to_string(ts[j]));
    }

    // Fourier coefficients up to harmonic degree+1 (alias-free: N > 2(degree+2))
    const int mmax = degree + 1;
    std::vector<double> alpha(mmax + 1, 0.0), beta(mmax + 1, 0.0);
    for (int m = 0; m <= mmax; ++m) {
        double ca = 0.0, sb = 0.0;
        for (int j = 0; j < N; ++j) {
            ca += h[j] * std::cos(m * ts[j]);
            sb += h[j] * std::sin(m * ts[j]);
        }
        alpha[m] = (m == 0 ? ca / N : 2.0 * ca / N);
        beta[m] = 2.0 * sb / N;
    }

    // cos(mt) = T_m(cos t); sin(mt) = sin t * U_{m-1}(cos t)
    const auto T = chebyshev_table(degree, false);
    const auto U = chebyshev_table(std::max(0, mmax - 1), true);
    TrigPolynomial poly;
    poly.degree = degree;
    poly.samples = N;
    poly.a.assign(degree + 1, 0.0);
    poly.b.assign(degree + 1, 0.0);
    for (int m = 0; m <= degree; ++m)
        for (size_t i = 0; i < T[m].size(); ++i) poly.a[i] += alpha[m] * T[m][i];
    for (int m = 1; m <= mmax; ++m)
        for (size_t i = 0; i < U[m - 1].size(); ++i) poly.b[i] += beta[m] * U[m - 1][i];

    for (int j = 0; j < N; ++j)
        poly.max_residual = std::max(poly.max_residual, std::abs(poly.eval(ts[j]) - h[j]));
    return poly;
}

}  // namespace canal
