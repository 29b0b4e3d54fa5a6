#include "tailband/stats.hpp"

#include <algorithm>
#include <cmath>

#include "tailband/error.hpp"

namespace tailband {

double sorted_quantile(std::span<const double> sorted, double q)
{
    require(!sorted.empty(), Errc::InvalidArgument, "quantile of an empty sample");
    require(q >= 0.0 && q <= 1.0, Errc::InvalidArgument, "quantile level outside [0,1]");
    const double h = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double empirical_quantile(std::span<const double> values, double q)
{
    std::vector<double> copy(values.begin(), values.end());
    std::sort(copy.begin(), copy.end());
    return sorted_quantile(copy, q);
}

double mean(std::span<const double> values)
{
    require(!values.empty(), Errc::InvalidArgument, "mean of an empty sample");
    double s = 0.0;
    for (double v : values) {
        s += v;
    }
    return s / static_cast<double>(values.size());
}

double variance(std::span<const double> values)
{
    require(values.size() >= 2, Errc::InvalidArgument, "variance needs two values");
    const double m = mean(values);
    double ss = 0.0;
    for (double v : values) {
        ss += (v - m) * (v - m);
    }
    return ss / static_cast<double>(values.size() - 1);
}

double batch_quantile_stderr(std::span<const double> values, double q, std::size_t batches)
{
    require(batches >= 2 && values.size() >= 2 * batches, Errc::InvalidArgument,
            "batch means need at least two values per batch");
    const std::size_t per = values.size() / batches;
    std::vector<double> qs;
    qs.reserve(batches);
    for (std::size_t b = 0; b < batches; ++b) {
        qs.push_back(empirical_quantile(values.subspan(b * per, per), q));
    }
    return std::sqrt(variance(qs) / static_cast<double>(batches));
}

double ks_statistic(std::span<const double> a, std::span<const double> b)
{
    require(!a.empty() && !b.empty(), Errc::InvalidArgument, "KS statistic of an empty sample");
    std::vector<double> x(a.begin(), a.end());
    std::vector<double> y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double nx = static_cast<double>(x.size());
    const double ny = static_cast<double>(y.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] <= v) {
            ++i;
        }
        while (j < y.size() && y[j] <= v) {
            ++j;
        }
        d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
    }
    return d;
}

}  // namespace tailband
