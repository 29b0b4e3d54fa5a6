#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tailband {

/// Type-7 (linear interpolation between order statistics) quantile of
/// `values` at level q in [0, 1]. The input does not need to be sorted.
double empirical_quantile(std::span<const double> values, double q);

/// Same as empirical_quantile but `sorted` must already be ascending.
double sorted_quantile(std::span<const double> sorted, double q);

double mean(std::span<const double> values);
/// Unbiased sample variance.
double variance(std::span<const double> values);

/// Standard error of a quantile estimate by batch means: the sample is cut
/// into `batches` contiguous groups, the quantile is computed per group and
/// the standard deviation of those divided by sqrt(batches) is returned.
double batch_quantile_stderr(std::span<const double> values, double q, std::size_t batches);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_statistic(std::span<const double> a, std::span<const double> b);

}  // namespace tailband
