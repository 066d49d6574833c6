#pragma once

#include <functional>
#include <vector>

#include "canal/common.hpp"

namespace canal {

/// sum_{i=0..degree} (a[i] + b[i] sin t) cos^i t — the shape of every
/// curvature numerator of a canal surface.
struct TrigPolynomial {
    int degree = 0;
    std::vector<double> a;  // degree+1 cosine-power coefficients
    std::vector<double> b;  // degree+1 sin-coupled coefficients
    double max_residual = 0.0;
    int samples = 0;

    double eval(double t) const;
    /// max |coefficient| at cosine powers > deg (for degree-bound checks)
    double max_coeff_above(int deg) const;
    double max_abs_coeff() const;
};

/// Least-squares fit over one period. Samples are equispaced with a half-step
/// phase (t_j = 2pi (j+1/2)/N), which is an orthogonal (DFT) system, so the
/// Fourier solve IS the least-squares solution; Fourier modes are then mapped
/// to the cos-power basis through Chebyshev polynomials of both kinds.
///
/// samples == 0 picks the default (a multiple of 4, at least 2(degree+1)+8);
/// fewer than 2(degree+1)+4 samples is an error (rank_deficient_fit), and a
/// non-finite sample value is a domain_violation.
TrigPolynomial fit_trig_polynomial(const std::function<double(double)>& fn, int degree,
                                   int samples = 0);

}  // namespace canal
