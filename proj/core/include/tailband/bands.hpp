#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "tailband/data.hpp"
#include "tailband/limit_laws.hpp"
#include "tailband/limitsim.hpp"
#include "tailband/plotsets.hpp"
#include "tailband/rng.hpp"

namespace tailband {

/// Rectangle around one plotted point: [x + dx_lo, x + dx_hi] x [y + dy_lo, y + dy_hi].
struct BandOffsets {
    double dx_lo = 0.0;
    double dx_hi = 0.0;
    double dy_lo = 0.0;
    double dy_hi = 0.0;
};

enum class BandRegime { Qq, MeLtHalf, MeGtHalf };

std::string_view band_regime_name(BandRegime r) noexcept;

struct ConfidenceBand {
    PlotSet base;
    std::vector<BandOffsets> offsets;
    double level = 0.95;
    BandRegime regime = BandRegime::Qq;
    std::map<std::string, QuantileEstimate> quantiles_used;
    double xi_hat = 0.0;
    std::string warning;
};

/// ME regimes are refused inside this interval around xi = 1/2.
inline constexpr double regime_guard_lo = 0.48;
inline constexpr double regime_guard_hi = 0.52;

/// Truncated QQ plot with vertical half-width xi_hat c / sqrt(k), where
/// c = qq_sup_quantile(1 - alpha/2, eps).
ConfidenceBand qq_band(const OrderedSample& sample, const PlotConfig& cfg, const TailIndexEstimate& xi);

struct MeBandOptions {
    BridgeMcOptions bridge;
    QuantileMethod stilde_method = QuantileMethod::CfInversion;
    std::size_t stilde_draws = 100000;
};

/// Truncated ME plot with the regime picked from xi_hat.
///
/// xi < 1/2: rectangles of half-widths c/sqrt(k) and d/sqrt(k), with c, d
/// the (1 - alpha/2) bridge-functional quantiles. 1/2 < xi < 1: horizontal
/// half-width c/sqrt(k) and vertical interval
/// [-X(1) q_hi / (j X(k)), -X(1) q_lo / (j X(k))] with q_lo, q_hi the
/// alpha/2 and 1 - alpha/2 quantiles of S̃. The interval is the set of
/// line heights compatible with the pivot
/// (k X(k)/X(1)) (y_j - line_j) (j/k) ~ S̃.
ConfidenceBand me_band(const OrderedSample& sample, const PlotConfig& cfg, const TailIndexEstimate& xi,
                       const RngStream& rng, const MeBandOptions& opts = {});

/// True when every point (x_i, slope x_i), x_i the plotted abscissas, lies
/// in the union of the band rectangles.
bool band_contains_line(const ConfidenceBand& band, double slope);

/// True when `nodes` equally spaced points of the segment y = slope x,
/// x in [x_lo, x_hi], all lie in the union of the band rectangles.
bool band_contains_segment(const ConfidenceBand& band, double slope, double x_lo, double x_hi,
                           std::size_t nodes = 2001);

struct DistSpec {
    enum class Kind { Pareto, Gpd, Stable, Nonstd };

    Kind kind = Kind::Pareto;
    double xi = 0.25;
    double beta = 1.0;
    double skew = 1.0;

    OrderedSample sample(std::size_t n, RngStream& rng) const;
    double true_xi() const { return kind == Kind::Nonstd ? 0.2 : xi; }
};

std::string_view dist_kind_name(DistSpec::Kind k) noexcept;

enum class CoveragePlot { Qq, Me };

struct CoverageOptions {
    MeBandOptions me;
    unsigned threads = 1;
    /// Band width from this xi instead of the per-replication Hill estimate.
    double fixed_xi = 0.0;
    /// Added to the Hill estimate (conservative choice).
    double xi_inflation = 0.0;
};

struct CoverageReplicate {
    bool covered = false;
    double xi_hat = 0.0;
    std::string error;
};

struct CoverageReport {
    double coverage = 0.0;
    std::size_t replications = 0;
    std::size_t failures = 0;
    std::vector<CoverageReplicate> replicates;
};

/// Fraction of replications whose band contains the true limit line over
/// the truncated window: at the plotted abscissas for QQ bands, and on the
/// whole segment x in [1, eps^{-xi}] for ME bands. Each
/// replication r draws its sample from rng.derive(r) and estimates xi by
/// Hill at the plot's k. Replications that raise a domain error count as
/// not covered and record the message.
CoverageReport coverage_experiment(const DistSpec& dist, std::size_t n, const PlotConfig& cfg,
                                   CoveragePlot plot, std::size_t replications, const RngStream& rng,
                                   const CoverageOptions& opts = {});

}  // namespace tailband
