#include "tailband/bands.hpp"

#include <algorithm>
#include <cmath>

#include "tailband/error.hpp"
#include "tailband/parallel.hpp"

namespace tailband {

std::string_view band_regime_name(BandRegime r) noexcept
{
    switch (r) {
    case BandRegime::Qq:
        return "qq";
    case BandRegime::MeLtHalf:
        return "me-lt-half";
    case BandRegime::MeGtHalf:
        return "me-gt-half";
    }
    return "unknown";
}

std::string_view dist_kind_name(DistSpec::Kind k) noexcept
{
    switch (k) {
    case DistSpec::Kind::Pareto:
        return "pareto";
    case DistSpec::Kind::Gpd:
        return "gpd";
    case DistSpec::Kind::Stable:
        return "stable";
    case DistSpec::Kind::Nonstd:
        return "nonstd";
    }
    return "unknown";
}

ConfidenceBand qq_band(const OrderedSample& sample, const PlotConfig& cfg, const TailIndexEstimate& xi)
{
    require(xi.xi > 0.0 && std::isfinite(xi.xi), Errc::DomainError, "QQ band needs xi > 0");
    ConfidenceBand band;
    band.base = qq_set(sample, cfg, true);
    band.level = 1.0 - cfg.alpha;
    band.regime = BandRegime::Qq;
    band.xi_hat = xi.xi;
    const auto c = qq_sup_quantile(1.0 - 0.5 * cfg.alpha, cfg.eps);
    band.quantiles_used["c"] = c;
    const double h = xi.xi * c.value / std::sqrt(static_cast<double>(cfg.k));
    band.offsets.assign(band.base.points.size(), BandOffsets{0.0, 0.0, -h, h});
    return band;
}

ConfidenceBand me_band(const OrderedSample& sample, const PlotConfig& cfg, const TailIndexEstimate& xi,
                       const RngStream& rng, const MeBandOptions& opts)
{
    const double x = xi.xi;
    require(std::isfinite(x) && x > 0.0, Errc::DomainError, "ME band needs xi > 0");
    require(x < 1.0, Errc::MeanDoesNotExist, "no ME band for xi>=1");
    require(x < regime_guard_lo || x > regime_guard_hi, Errc::RegimeBoundary,
            "xi_hat = " + format_double(x) + " is too close to 1/2, where no limit law is available");

    ConfidenceBand band;
    band.base = me_set(sample, cfg, true);
    band.level = 1.0 - cfg.alpha;
    band.xi_hat = x;
    const double rk = std::sqrt(static_cast<double>(cfg.k));
    const double upper = 1.0 - 0.5 * cfg.alpha;
    const RngStream qrng = rng.derive(streams::band);

    if (x < 0.5) {
        band.regime = BandRegime::MeLtHalf;
        const auto q = me_band_quantiles(x, cfg.eps, upper, qrng, opts.bridge);
        band.quantiles_used["c"] = q.c;
        band.quantiles_used["d"] = q.d;
        const double hx = q.c.value / rk;
        const double hy = q.d.value / rk;
        band.offsets.assign(band.base.points.size(), BandOffsets{-hx, hx, -hy, hy});
        return band;
    }

    band.regime = BandRegime::MeGtHalf;
    const auto c = me_c_quantile(x, cfg.eps, upper, qrng.derive(1), opts.bridge);
    band.quantiles_used["c"] = c;
    const StableSpec spec{1.0 / x, 1.0, StableSpec::Kind::LimitSTilde};
    const double levels[] = {0.5 * cfg.alpha, upper};
    LimitQuantileOptions lq;
    lq.mc_draws = opts.stilde_draws;
    lq.threads = opts.bridge.threads;
    const auto s = limit_quantiles(spec, levels, opts.stilde_method, qrng.derive(2), lq);
    band.quantiles_used["stilde_lo"] = s[0];
    band.quantiles_used["stilde_hi"] = s[1];

    const double hx = c.value / rk;
    const double ratio = sample.order_stat(1) / band.base.normalizers.at("X(k)");
    band.base.normalizers["X(1)"] = sample.order_stat(1);
    band.offsets.reserve(band.base.points.size());
    for (std::size_t j : band.base.indices) {
        const double scale = ratio / static_cast<double>(j);
        band.offsets.push_back({-hx, hx, -scale * s[1].value, -scale * s[0].value});
    }
    if (cfg.alpha <= 0.01 + 1e-12) {
        band.warning = "the 99% band for 1/2 < xi < 1 is very wide";
    }
    return band;
}

namespace {

bool in_union(const ConfidenceBand& band, double x, double y)
{
    const auto& pts = band.base.points;
    for (std::size_t r = 0; r < pts.size(); ++r) {
        const auto& o = band.offsets[r];
        if (x >= pts[r].x + o.dx_lo && x <= pts[r].x + o.dx_hi && y >= pts[r].y + o.dy_lo &&
            y <= pts[r].y + o.dy_hi) {
            return true;
        }
    }
    return false;
}

}  // namespace

bool band_contains_line(const ConfidenceBand& band, double slope)
{
    return std::all_of(band.base.points.begin(), band.base.points.end(),
                       [&](const Point& p) { return in_union(band, p.x, slope * p.x); });
}

bool band_contains_segment(const ConfidenceBand& band, double slope, double x_lo, double x_hi, std::size_t nodes)
{
    require(nodes >= 2 && x_hi >= x_lo, Errc::InvalidArgument, "segment needs x_lo <= x_hi and 2 nodes");
    for (std::size_t i = 0; i < nodes; ++i) {
        const double x = x_lo + (x_hi - x_lo) * static_cast<double>(i) / static_cast<double>(nodes - 1);
        if (!in_union(band, x, slope * x)) {
            return false;
        }
    }
    return true;
}

OrderedSample DistSpec::sample(std::size_t n, RngStream& rng) const
{
    switch (kind) {
    case Kind::Pareto:
        return sample_pareto(xi, n, rng);
    case Kind::Gpd:
        return sample_gpd({xi, beta}, n, rng);
    case Kind::Stable:
        return sample_stable({1.0 / xi, skew, StableSpec::Kind::SimulationLaw}, n, rng);
    case Kind::Nonstd:
        return sample_nonstd(n, rng);
    }
    throw Error(Errc::InvalidArgument, "unknown distribution");
}

CoverageReport coverage_experiment(const DistSpec& dist, std::size_t n, const PlotConfig& cfg,
                                   CoveragePlot plot, std::size_t replications, const RngStream& rng,
                                   const CoverageOptions& opts)
{
    require(replications >= 1, Errc::InvalidArgument, "need at least one replication");
    const double true_xi = dist.true_xi();
    double slope = true_xi;
    if (plot == CoveragePlot::Me) {
        require(true_xi < 1.0, Errc::MeanDoesNotExist, "no ME limit line for xi>=1");
        slope = true_xi / (1.0 - true_xi);
    }

    const unsigned outer = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(opts.threads), replications));
    MeBandOptions me = opts.me;
    if (outer > 1) {
        me.bridge.threads = 1;
    }

    CoverageReport report;
    report.replications = replications;
    report.replicates.resize(replications);
    parallel_for(replications, outer, [&](std::size_t r) {
        auto& rep = report.replicates[r];
        try {
            RngStream local = rng.derive(r);
            const OrderedSample s = dist.sample(n, local);
            TailIndexEstimate xi = opts.fixed_xi > 0.0 ? fixed_xi(opts.fixed_xi, cfg.k) : hill_estimate(s, cfg.k);
            xi.xi += opts.xi_inflation;
            rep.xi_hat = xi.xi;
            const ConfidenceBand band =
                plot == CoveragePlot::Qq ? qq_band(s, cfg, xi) : me_band(s, cfg, xi, local.derive(streams::band), me);
            rep.covered = plot == CoveragePlot::Qq
                              ? band_contains_line(band, slope)
                              : band_contains_segment(band, slope, 1.0, std::pow(cfg.eps, -true_xi));
        } catch (const Error& e) {
            rep.covered = false;
            rep.error = e.what();
        }
    });

    std::size_t hits = 0;
    for (const auto& rep : report.replicates) {
        hits += rep.covered ? 1 : 0;
        report.failures += rep.error.empty() ? 0 : 1;
    }
    report.coverage = static_cast<double>(hits) / static_cast<double>(replications);
    return report;
}

}  // namespace tailband
