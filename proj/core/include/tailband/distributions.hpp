#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "tailband/data.hpp"
#include "tailband/rng.hpp"

namespace tailband {

struct GpdParams {
    double xi = 0.0;
    double beta = 1.0;
};

/// |xi| below this is treated as the exponential case.
inline constexpr double gpd_zero_xi = 1e-12;

double gpd_cdf(const GpdParams& p, double x);
double gpd_me(const GpdParams& p, double u);
double gpd_quantile(const GpdParams& p, double q);

OrderedSample sample_pareto(double xi, std::size_t n, RngStream& rng);
OrderedSample sample_gpd(const GpdParams& p, std::size_t n, RngStream& rng);

struct StableSpec {
    enum class Kind { SimulationLaw, LimitS, LimitS1, LimitSTilde };

    double alpha = 2.0;
    double skew = 0.0;
    Kind kind = Kind::SimulationLaw;

    double xi() const { return 1.0 / alpha; }
};

/// One draw from the alpha-stable law in the S1 parameterization with
/// location 0 and scale 1 (Chambers-Mallows-Stuck). Its characteristic
/// function is stable_cf(alpha, skew, t).
double draw_stable(double alpha, double skew, RngStream& rng);

/// exp(-|t|^a (1 - i b sgn(t) tan(pi a / 2))) for a != 1 and
/// exp(-|t| (1 + i b (2/pi) sgn(t) log|t|)) for a = 1.
std::complex<double> stable_cf(double alpha, double skew, double t);

/// n draws of the SimulationLaw kind.
OrderedSample sample_stable(const StableSpec& spec, std::size_t n, RngStream& rng);

double nonstd_quantile_tail(double x);
double nonstd_sf(double y);
OrderedSample sample_nonstd(std::size_t n, RngStream& rng);

}  // namespace tailband
