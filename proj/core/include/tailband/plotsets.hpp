#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tailband/data.hpp"

namespace tailband {

struct PlotConfig {
    std::size_t k = 0;
    double eps = 0.05;
    double alpha = 0.05;

    /// Smallest kept index: ceil(eps k), at least 1.
    std::size_t first_index() const;
    /// Throws BadK / InvalidArgument unless 2 <= k < n and eps, alpha in (0,1).
    void validate(std::size_t n) const;
};

enum class PlotKind {
    Qq,
    QqNormalized,
    Me,
    MeNormalizedLtHalf,
    MeNormalizedGtHalf,
    MeNormalizedGtOne,
    Hill,
    Pickands,
};

std::string_view plot_kind_name(PlotKind kind) noexcept;

struct Point {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Point&, const Point&) = default;
};

struct PlotSet {
    std::vector<Point> points;
    PlotKind kind = PlotKind::Qq;
    PlotConfig config;
    /// Constants used to build the points: "X(k)", "X(1)", "xi", "b(n)".
    std::map<std::string, double> normalizers;
    /// Order-statistic index (or k for Hill/Pickands) behind each point.
    std::vector<std::size_t> indices;
    bool truncated = false;
};

/// Segment of the line y = slope x over x in [x_lo, x_hi].
struct LimitSet {
    double slope = 0.0;
    double x_lo = 0.0;
    double x_hi = 0.0;
};

/// {(-log(j/k), log(X(j)/X(k)))} for j = k down to 1, or down to
/// cfg.first_index() when `truncate` is set.
PlotSet qq_set(const OrderedSample& sample, const PlotConfig& cfg, bool truncate = false);

/// Centered QQ set of the weak limit theorem:
/// (x_j, xi x_j + sqrt(k)(y_j - xi x_j)).
PlotSet qq_normalized_set(const OrderedSample& sample, const PlotConfig& cfg,
                          const TailIndexEstimate& xi, bool truncate = false);

/// (1/X(k)) {(X(i), M̂(X(i))) : i = 2..k}, or i >= max(2, first_index()).
PlotSet me_set(const OrderedSample& sample, const PlotConfig& cfg, bool truncate = false);

enum class MeRegime { LtHalf, GtHalf, GtOne };

/// Quantile function b with b(n) = F^{<-}(1 - 1/n), needed for xi > 1.
using QuantileFunction = std::function<double(double)>;

PlotSet me_normalized_set(const OrderedSample& sample, const PlotConfig& cfg,
                          const TailIndexEstimate& xi, MeRegime regime,
                          const std::optional<QuantileFunction>& known_b = std::nullopt,
                          bool truncate = false);

/// (k, Hill estimate at k) for k = 1..k_max.
PlotSet hill_plot(const OrderedSample& sample, std::size_t k_max);
/// (k, Pickands estimate at k) for k = 1..floor(n/4) capped at k_max.
PlotSet pickands_plot(const OrderedSample& sample, std::size_t k_max);

/// Hausdorff distance between the plotted points and the limit segment
/// over the plot's x-range. The segment is discretized at 1001 points.
double hausdorff_to_limit(const PlotSet& plot, const LimitSet& limit);

}  // namespace tailband
