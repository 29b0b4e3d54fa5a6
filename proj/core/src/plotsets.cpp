#include "tailband/plotsets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tailband/error.hpp"

namespace tailband {

std::size_t PlotConfig::first_index() const
{
    const auto j = static_cast<std::size_t>(std::ceil(eps * static_cast<double>(k) - 1e-9));
    return std::max<std::size_t>(j, 1);
}

void PlotConfig::validate(std::size_t n) const
{
    require(k >= 2 && k < n, Errc::BadK,
            "need 2 <= k < n (k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")");
    require(eps > 0.0 && eps < 1.0, Errc::InvalidArgument, "eps must lie in (0,1)");
    require(alpha > 0.0 && alpha < 1.0, Errc::InvalidArgument, "alpha must lie in (0,1)");
}

std::string_view plot_kind_name(PlotKind kind) noexcept
{
    switch (kind) {
    case PlotKind::Qq:
        return "qq";
    case PlotKind::QqNormalized:
        return "qq-normalized";
    case PlotKind::Me:
        return "me";
    case PlotKind::MeNormalizedLtHalf:
        return "me-normalized-lt-half";
    case PlotKind::MeNormalizedGtHalf:
        return "me-normalized-gt-half";
    case PlotKind::MeNormalizedGtOne:
        return "me-normalized-gt-one";
    case PlotKind::Hill:
        return "hill";
    case PlotKind::Pickands:
        return "pickands";
    }
    return "unknown";
}

namespace {

double positive_xk(const OrderedSample& sample, std::size_t k)
{
    const double xk = sample.order_stat(k);
    require(xk > 0.0, Errc::NonPositiveOrderStatistic,
            "X(" + std::to_string(k) + ") = " + format_double(xk) + " is not positive");
    return xk;
}

PlotSet start(PlotKind kind, const PlotConfig& cfg, bool truncate)
{
    PlotSet p;
    p.kind = kind;
    p.config = cfg;
    p.truncated = truncate;
    return p;
}

}  // namespace

PlotSet qq_set(const OrderedSample& sample, const PlotConfig& cfg, bool truncate)
{
    cfg.validate(sample.size());
    const std::size_t k = cfg.k;
    const double xk = positive_xk(sample, k);
    const double log_xk = std::log(xk);
    const double log_k = std::log(static_cast<double>(k));
    const std::size_t j_min = truncate ? cfg.first_index() : 1;

    PlotSet p = start(PlotKind::Qq, cfg, truncate);
    p.normalizers["X(k)"] = xk;
    for (std::size_t j = k; j >= j_min; --j) {
        const double x = j == k ? 0.0 : log_k - std::log(static_cast<double>(j));
        const double y = j == k ? 0.0 : std::log(sample.order_stat(j)) - log_xk;
        p.points.push_back({x, y});
        p.indices.push_back(j);
        if (j == 1) {
            break;
        }
    }
    return p;
}

PlotSet qq_normalized_set(const OrderedSample& sample, const PlotConfig& cfg,
                          const TailIndexEstimate& xi, bool truncate)
{
    require(xi.xi > 0.0, Errc::DomainError, "normalized QQ set needs xi > 0");
    PlotSet p = qq_set(sample, cfg, truncate);
    p.kind = PlotKind::QqNormalized;
    p.normalizers["xi"] = xi.xi;
    const double rk = std::sqrt(static_cast<double>(cfg.k));
    for (auto& pt : p.points) {
        const double line = xi.xi * pt.x;
        pt.y = line + rk * (pt.y - line);
    }
    return p;
}

PlotSet me_set(const OrderedSample& sample, const PlotConfig& cfg, bool truncate)
{
    cfg.validate(sample.size());
    const std::size_t k = cfg.k;
    require(k >= 3, Errc::BadK, "ME plot needs k >= 3");
    const double xk = positive_xk(sample, k);
    const auto me = empirical_me_at_order_stats(sample);
    const std::size_t i_min = std::max<std::size_t>(2, truncate ? cfg.first_index() : 2);

    PlotSet p = start(PlotKind::Me, cfg, truncate);
    p.normalizers["X(k)"] = xk;
    for (std::size_t i = i_min; i <= k; ++i) {
        const double m = me[i - 1];
        if (std::isnan(m)) {
            throw Error(Errc::EmptyExceedanceSet,
                        "no observation exceeds X(" + std::to_string(i) + ")");
        }
        p.points.push_back({sample.order_stat(i) / xk, m / xk});
        p.indices.push_back(i);
    }
    return p;
}

PlotSet me_normalized_set(const OrderedSample& sample, const PlotConfig& cfg,
                          const TailIndexEstimate& xi, MeRegime regime,
                          const std::optional<QuantileFunction>& known_b, bool truncate)
{
    const double x = xi.xi;
    switch (regime) {
    case MeRegime::LtHalf:
        require(x > 0.0 && x < 0.5, Errc::RegimeMismatch, "lt-half regime needs 0 < xi < 1/2");
        break;
    case MeRegime::GtHalf:
        require(x > 0.5 && x < 1.0, Errc::RegimeMismatch, "gt-half regime needs 1/2 < xi < 1");
        break;
    case MeRegime::GtOne:
        require(x > 1.0, Errc::RegimeMismatch, "gt-one regime needs xi > 1");
        require(known_b.has_value() && *known_b, Errc::MissingQuantileFunction,
                "gt-one regime needs the quantile function b");
        break;
    }

    PlotSet p = me_set(sample, cfg, truncate);
    const double k = static_cast<double>(cfg.k);
    const double rk = std::sqrt(k);
    const double xk = p.normalizers.at("X(k)");
    const double x1 = sample.order_stat(1);
    const double slope = regime == MeRegime::GtOne ? 0.0 : x / (1.0 - x);
    p.normalizers["xi"] = x;

    double bn = 0.0;
    if (regime == MeRegime::GtOne) {
        bn = (*known_b)(static_cast<double>(sample.size()));
        require(std::isfinite(bn) && bn > 0.0, Errc::DomainError, "b(n) must be positive");
        p.normalizers["b(n)"] = bn;
        p.kind = PlotKind::MeNormalizedGtOne;
    } else if (regime == MeRegime::GtHalf) {
        p.normalizers["X(1)"] = x1;
        p.kind = PlotKind::MeNormalizedGtHalf;
    } else {
        p.kind = PlotKind::MeNormalizedLtHalf;
    }

    for (std::size_t n = 0; n < p.points.size(); ++n) {
        auto& pt = p.points[n];
        const double t = static_cast<double>(p.indices[n]) / k;
        const double tx = std::pow(t, -x);
        const double me_over_xk = pt.y;
        pt.x = tx + rk * (pt.x - tx);
        switch (regime) {
        case MeRegime::LtHalf:
            pt.y = slope * tx + rk * (me_over_xk - slope * tx);
            break;
        case MeRegime::GtHalf:
            pt.y = slope * tx + (k * xk / x1) * (me_over_xk - slope * tx);
            break;
        case MeRegime::GtOne:
            pt.y = me_over_xk * xk / (bn / k);
            break;
        }
    }
    return p;
}

PlotSet hill_plot(const OrderedSample& sample, std::size_t k_max)
{
    require(k_max >= 1 && k_max <= sample.size() - 1, Errc::BadK, "Hill plot needs 1 <= k_max <= n-1");
    PlotSet p;
    p.kind = PlotKind::Hill;
    p.config.k = k_max;
    // Running sum of log X(i); H(k) = S(k)/k - log X(k+1).
    double s = 0.0;
    for (std::size_t k = 1; k <= k_max; ++k) {
        const double xk = sample.order_stat(k);
        const double next = sample.order_stat(k + 1);
        require(next > 0.0, Errc::NonPositiveOrderStatistic,
                "X(" + std::to_string(k + 1) + ") = " + format_double(next) + " is not positive");
        s += std::log(xk);
        p.points.push_back({static_cast<double>(k), s / static_cast<double>(k) - std::log(next)});
        p.indices.push_back(k);
    }
    return p;
}

PlotSet pickands_plot(const OrderedSample& sample, std::size_t k_max)
{
    const std::size_t top = std::min(k_max, sample.size() / 4);
    require(top >= 1, Errc::BadK, "Pickands plot needs n >= 4");
    PlotSet p;
    p.kind = PlotKind::Pickands;
    p.config.k = top;
    for (std::size_t k = 1; k <= top; ++k) {
        const auto est = pickands_estimate(sample, k);
        p.points.push_back({static_cast<double>(k), est.xi});
        p.indices.push_back(k);
    }
    return p;
}

double hausdorff_to_limit(const PlotSet& plot, const LimitSet& limit)
{
    require(!plot.points.empty(), Errc::InvalidArgument, "empty plot");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& pt : plot.points) {
        lo = std::min(lo, pt.x);
        hi = std::max(hi, pt.x);
    }
    const double slack = 1e-12 * std::max(1.0, std::abs(hi));
    require(limit.x_lo <= lo + slack && limit.x_hi >= hi - slack, Errc::WindowMismatch,
            "limit window does not cover the plot x-range");

    const double s = limit.slope;
    const double ax = lo;
    const double ay = s * lo;
    const double dx = hi - lo;
    const double dy = s * (hi - lo);
    const double len2 = dx * dx + dy * dy;
    auto dist_to_segment = [&](const Point& p) {
        double u = len2 > 0.0 ? ((p.x - ax) * dx + (p.y - ay) * dy) / len2 : 0.0;
        u = std::clamp(u, 0.0, 1.0);
        return std::hypot(p.x - (ax + u * dx), p.y - (ay + u * dy));
    };

    double h = 0.0;
    for (const auto& pt : plot.points) {
        h = std::max(h, dist_to_segment(pt));
    }
    constexpr int segments = 1000;
    for (int i = 0; i <= segments; ++i) {
        const double u = static_cast<double>(i) / segments;
        const Point q{ax + u * dx, ay + u * dy};
        double best = std::numeric_limits<double>::infinity();
        for (const auto& pt : plot.points) {
            best = std::min(best, std::hypot(pt.x - q.x, pt.y - q.y));
        }
        h = std::max(h, best);
    }
    return h;
}

}  // namespace tailband
