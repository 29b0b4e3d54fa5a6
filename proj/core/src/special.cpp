#include "tailband/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "tailband/error.hpp"
#include "tailband/quadrature.hpp"

namespace tailband {

double normal_cdf(double x)
{
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double normal_sf(double x)
{
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double lambertw(double x)
{
    constexpr double inv_e = 1.0 / std::numbers::e;
    require(x >= -inv_e - 1e-16, Errc::DomainError, "lambertw needs x >= -1/e");
    if (x == 0.0) {
        return 0.0;
    }
    if (x <= -inv_e) {
        return -1.0;
    }

    double w;
    if (x < -0.25) {
        const double p = std::sqrt(2.0 * (std::numbers::e * x + 1.0));
        w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
    } else if (x <= std::numbers::e) {
        w = std::log1p(x);
    } else {
        const double l1 = std::log(x);
        const double l2 = std::log(l1);
        w = l1 - l2 + l2 / l1;
    }

    for (int iter = 0; iter < 64; ++iter) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        const double wp1 = w + 1.0;
        if (wp1 == 0.0) {
            break;
        }
        const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        w -= step;
        if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(w))) {
            break;
        }
    }
    return w;
}

std::complex<double> oscillatory_tail(double b, double z)
{
    require(z > 0.0 && b > 0.0, Errc::DomainError, "oscillatory_tail needs z > 0, b > 0");
    using C = std::complex<double>;
    auto f = [&](double s) { return std::exp(-s) * std::pow(C(z, s), -b); };

    // The integrand varies on the scale min(z, 1) near s = 0; cut there and
    // then on a doubling partition up to where e^{-s} is negligible.
    C sum{};
    double lo = 0.0;
    double hi = std::min(z, 1.0);
    while (lo < 60.0) {
        sum += integrate<C>(f, lo, hi, 1e-13, 1e-300, 500).value;
        lo = hi;
        hi = std::min(60.0, 2.0 * hi);
    }
    return C(0.0, 1.0) * std::exp(C(0.0, z)) * sum;
}

}  // namespace tailband
