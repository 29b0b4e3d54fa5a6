#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tailband/quantile_estimate.hpp"
#include "tailband/rng.hpp"

namespace tailband {

/// Index offsets of the crossing series. `Proof` sums
/// Phi((4k-1)x) - Phi((4k-3)x); `Statement` sums Phi((4k+1)x) - Phi((4k-1)x),
/// with x = M sqrt(delta). Only `Proof` equals P(sup_{t>=delta} |W(t)|/t > M).
enum class SeriesForm { Proof, Statement };

/// P(sup_{t >= delta} |W(t)|/t > M) from the first `terms` terms of the
/// series, clamped to [0, 1].
double prop51_probability(double M, double delta, std::size_t terms = 15,
                          SeriesForm form = SeriesForm::Proof);

/// P(-(alpha t + beta) <= W(t) <= a t + b for all t >= 0), first `terms`
/// terms of Doob's two-boundary series.
double doob_band_probability(double a, double b, double alpha, double beta, std::size_t terms = 100);

/// M with P(sup_{t>=delta} |W(t)|/t > M) = 1 - level, delta = eps/(1-eps),
/// by bisection on the 15-term series.
QuantileEstimate qq_sup_quantile(double level, double eps, SeriesForm form = SeriesForm::Proof);

/// Brownian bridge on t_j = j/m, j = 1..m. values[m-1] is exactly 0.
struct BridgePath {
    std::size_t m = 0;
    std::vector<double> values;

    double time(std::size_t j) const { return static_cast<double>(j + 1) / static_cast<double>(m); }
};

BridgePath simulate_bridge(std::size_t m, RngStream& rng);
/// Same, writing into `out` (resized to m) to avoid reallocations.
void simulate_bridge_into(std::size_t m, RngStream& rng, std::vector<double>& out);

/// sup over grid points t in [eps, 1] of xi t^{-(1+xi)} B(t).
double me_c_functional(std::span<const double> bridge, double xi, double eps);

/// sup over grid points t in [eps, 1] of xi t^{-1} \int_{1/m}^t y^{-(1+xi)} B(y) dy
/// (trapezoid rule).
double me_d_functional(std::span<const double> bridge, double xi, double eps);

struct BridgeMcOptions {
    std::size_t paths = 10000;
    std::size_t grid = 8192;
    unsigned threads = 1;
};

struct MeQuantiles {
    QuantileEstimate c;
    QuantileEstimate d;
};

/// Empirical quantiles at `level` of both functionals over simulated
/// bridges, standard errors from 10 batch means. Needs 0 < xi < 1/2.
MeQuantiles me_band_quantiles(double xi, double eps, double level, const RngStream& rng,
                              const BridgeMcOptions& opts = {});

/// Quantile of the c functional alone; valid for every xi > 0.
QuantileEstimate me_c_quantile(double xi, double eps, double level, const RngStream& rng,
                               const BridgeMcOptions& opts = {});

/// Simulated values of both functionals, one pair per path, ordered by path.
struct FunctionalDraws {
    std::vector<double> c;
    std::vector<double> d;
};
FunctionalDraws simulate_me_functionals(double xi, double eps, bool want_d, const RngStream& rng,
                                        const BridgeMcOptions& opts);

/// Simulated sup_{0 <= u <= 1} |W(u)| for n Brownian paths. Each path is
/// refined lazily by Brownian-bridge bisection down to a grid of 10240
/// steps, skipping intervals whose bridge reaches the running maximum
/// with probability below e^{-30}, and closes with the exact bridge
/// maximum on the finest intervals.
std::vector<double> simulate_sup_abs_bm(std::size_t n, const RngStream& rng, unsigned threads = 1);

}  // namespace tailband
