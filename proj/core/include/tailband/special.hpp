#pragma once

#include <complex>

namespace tailband {

/// Standard normal cdf and survival function. Both go through erfc so
/// that deep tails keep full relative precision.
double normal_cdf(double x);
double normal_sf(double x);

/// Principal branch W0 of the Lambert W function, w e^w = x, x >= -1/e.
///
/// Initial guess: the branch-point series in p = sqrt(2(e x + 1)) for
/// x < -0.25, log1p(x) up to x = e, and the asymptotic L1 - L2 + L2/L1
/// above; then Halley iterations until the step is below 4 ulp.
double lambertw(double x);

/// E_b(z) = \int_z^\infty e^{iu} u^{-b} du for real z > 0 and b > 0,
/// evaluated on the rotated contour u = z + is.
std::complex<double> oscillatory_tail(double b, double z);

}  // namespace tailband
