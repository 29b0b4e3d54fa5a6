#include "tailband/distributions.hpp"

#include <cmath>
#include <numbers>

#include "tailband/error.hpp"
#include "tailband/special.hpp"

namespace tailband {

namespace {

void check_gpd(const GpdParams& p)
{
    require(std::isfinite(p.xi) && p.beta > 0.0 && std::isfinite(p.beta), Errc::DomainError,
            "GPD needs finite xi and beta > 0");
}

void check_n(std::size_t n)
{
    require(n >= 2, Errc::TooFewObservations, "a sample needs n >= 2");
}

}  // namespace

double gpd_cdf(const GpdParams& p, double x)
{
    check_gpd(p);
    require(x >= 0.0, Errc::DomainError, "GPD cdf needs x >= 0");
    if (std::abs(p.xi) < gpd_zero_xi) {
        return -std::expm1(-x / p.beta);
    }
    if (p.xi < 0.0) {
        const double right = -p.beta / p.xi;
        require(x <= right, Errc::DomainError, "x beyond the GPD right endpoint");
        if (x == right) {
            return 1.0;
        }
    }
    // 1 - (1 + xi x / beta)^{-1/xi}, written to keep precision near 0.
    return -std::expm1(-std::log1p(p.xi * x / p.beta) / p.xi);
}

double gpd_me(const GpdParams& p, double u)
{
    check_gpd(p);
    require(p.xi < 1.0, Errc::DomainError, "GPD mean excess needs xi < 1");
    require(u >= 0.0, Errc::DomainError, "GPD mean excess needs u >= 0");
    if (p.xi < 0.0) {
        require(u < -p.beta / p.xi, Errc::DomainError, "u beyond the GPD right endpoint");
    }
    return p.beta / (1.0 - p.xi) + p.xi * u / (1.0 - p.xi);
}

double gpd_quantile(const GpdParams& p, double q)
{
    check_gpd(p);
    require(q >= 0.0 && q < 1.0, Errc::DomainError, "GPD quantile needs q in [0,1)");
    const double l = -std::log1p(-q);
    if (std::abs(p.xi) < gpd_zero_xi) {
        return p.beta * l;
    }
    return p.beta * std::expm1(p.xi * l) / p.xi;
}

OrderedSample sample_pareto(double xi, std::size_t n, RngStream& rng)
{
    require(xi > 0.0 && std::isfinite(xi), Errc::DomainError, "Pareto needs xi > 0");
    check_n(n);
    std::vector<double> v(n);
    for (double& x : v) {
        x = std::pow(rng.uniform(), -xi);
    }
    return OrderedSample(std::move(v));
}

OrderedSample sample_gpd(const GpdParams& p, std::size_t n, RngStream& rng)
{
    check_gpd(p);
    check_n(n);
    std::vector<double> v(n);
    for (double& x : v) {
        x = gpd_quantile(p, 1.0 - rng.uniform());
    }
    return OrderedSample(std::move(v));
}

double draw_stable(double alpha, double skew, RngStream& rng)
{
    constexpr double pi = std::numbers::pi;
    const double v = pi * (rng.uniform() - 0.5);
    const double w = rng.exponential();
    if (alpha == 1.0) {
        const double h = 0.5 * pi + skew * v;
        return (2.0 / pi) * (h * std::tan(v) - skew * std::log(0.5 * pi * w * std::cos(v) / h));
    }
    const double t = skew * std::tan(0.5 * pi * alpha);
    const double b = std::atan(t) / alpha;
    const double s = std::pow(1.0 + t * t, 0.5 / alpha);
    const double av = alpha * (v + b);
    return s * std::sin(av) / std::pow(std::cos(v), 1.0 / alpha) *
           std::pow(std::cos(v - av) / w, (1.0 - alpha) / alpha);
}

std::complex<double> stable_cf(double alpha, double skew, double t)
{
    if (t == 0.0) {
        return 1.0;
    }
    const double at = std::abs(t);
    const double sg = t > 0.0 ? 1.0 : -1.0;
    std::complex<double> expo;
    if (alpha == 1.0) {
        expo = -at * std::complex<double>(1.0, skew * (2.0 / std::numbers::pi) * sg * std::log(at));
    } else {
        expo = -std::pow(at, alpha) *
               std::complex<double>(1.0, -skew * sg * std::tan(0.5 * std::numbers::pi * alpha));
    }
    return std::exp(expo);
}

OrderedSample sample_stable(const StableSpec& spec, std::size_t n, RngStream& rng)
{
    require(spec.kind == StableSpec::Kind::SimulationLaw, Errc::DomainError,
            "sample_stable draws the SimulationLaw kind only");
    require(spec.alpha > 0.0 && spec.alpha <= 2.0, Errc::DomainError, "stable alpha must lie in (0,2]");
    require(spec.skew >= -1.0 && spec.skew <= 1.0, Errc::DomainError, "stable skew must lie in [-1,1]");
    check_n(n);
    std::vector<double> v(n);
    for (double& x : v) {
        x = draw_stable(spec.alpha, spec.skew, rng);
    }
    return OrderedSample(std::move(v));
}

double nonstd_quantile_tail(double x)
{
    require(x > 0.0 && x <= 1.0, Errc::DomainError, "nonstd quantile needs x in (0,1]");
    return std::pow(x, -0.2) * (1.0 - 0.1 * std::log(x));
}

double nonstd_sf(double y)
{
    require(y >= 1.0, Errc::DomainError, "nonstd survival function needs y >= 1");
    const double w = lambertw(2.0 * y * std::exp(2.0));
    // (w / 2y)^5 avoids overflow of w^5 and y^5 separately.
    return std::pow(w / (2.0 * y), 5.0);
}

OrderedSample sample_nonstd(std::size_t n, RngStream& rng)
{
    check_n(n);
    std::vector<double> v(n);
    for (double& x : v) {
        x = nonstd_quantile_tail(rng.uniform());
    }
    return OrderedSample(std::move(v));
}

}  // namespace tailband
