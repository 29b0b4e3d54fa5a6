#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "manifest.hpp"
#include "svg.hpp"
#include "tailband/bands.hpp"
#include "tailband/distributions.hpp"
#include "tailband/error.hpp"
#include "tailband/limit_laws.hpp"
#include "tailband/limitsim.hpp"
#include "tailband/plotsets.hpp"

namespace tailband::cli {

using nlohmann::json;

namespace {

DistSpec parse_dist(const std::string& name, double xi, double beta, double skew)
{
    static const std::map<std::string, DistSpec::Kind> kinds{{"pareto", DistSpec::Kind::Pareto},
                                                             {"gpd", DistSpec::Kind::Gpd},
                                                             {"stable", DistSpec::Kind::Stable},
                                                             {"nonstd", DistSpec::Kind::Nonstd}};
    const auto it = kinds.find(name);
    require(it != kinds.end(), Errc::InvalidArgument, "unknown distribution '" + name + "'");
    return {it->second, xi, beta, skew};
}

QuantileMethod parse_method(const std::string& m)
{
    if (m == "cf-inversion") {
        return QuantileMethod::CfInversion;
    }
    require(m == "monte-carlo", Errc::InvalidArgument, "unknown quantile method '" + m + "'");
    return QuantileMethod::MonteCarlo;
}

json quantile_json(const QuantileEstimate& q)
{
    return {{"value", q.value},
            {"level", q.level},
            {"source", std::string(source_name(q.source))},
            {"std_error", q.std_error},
            {"n_paths", q.n_paths},
            {"grid_m", q.grid_m}};
}

json dist_json(const DistSpec& d)
{
    json j{{"kind", std::string(dist_kind_name(d.kind))}, {"true_xi", d.true_xi()}};
    if (d.kind != DistSpec::Kind::Nonstd) {
        j["xi"] = d.xi;
    }
    if (d.kind == DistSpec::Kind::Gpd) {
        j["beta"] = d.beta;
    }
    if (d.kind == DistSpec::Kind::Stable) {
        j["skew"] = d.skew;
    }
    return j;
}

std::string points_csv(const PlotSet& p)
{
    std::string s = "x,y\n";
    for (const auto& pt : p.points) {
        s += format_double(pt.x) + ',' + format_double(pt.y) + '\n';
    }
    return s;
}

std::string band_csv(const ConfidenceBand& b)
{
    std::string s = "x,y,xlo,xhi,ylo,yhi\n";
    for (std::size_t i = 0; i < b.base.points.size(); ++i) {
        const auto& p = b.base.points[i];
        const auto& o = b.offsets[i];
        s += format_double(p.x) + ',' + format_double(p.y) + ',' + format_double(p.x + o.dx_lo) + ',' +
             format_double(p.x + o.dx_hi) + ',' + format_double(p.y + o.dy_lo) + ',' +
             format_double(p.y + o.dy_hi) + '\n';
    }
    return s;
}

json band_json(const ConfidenceBand& b)
{
    json j{{"regime", std::string(band_regime_name(b.regime))},
           {"level", b.level},
           {"alpha", b.base.config.alpha},
           {"xi_hat", b.xi_hat},
           {"points", b.base.points.size()}};
    j["quantiles"] = json::object();
    for (const auto& [name, q] : b.quantiles_used) {
        j["quantiles"][name] = quantile_json(q);
    }
    if (!b.warning.empty()) {
        j["warning"] = b.warning;
    }
    return j;
}

TailIndexEstimate estimate_xi(const OrderedSample& s, const AnalyzeArgs& a)
{
    TailIndexEstimate xi;
    if (a.xi) {
        xi = fixed_xi(*a.xi, a.k);
    } else if (a.estimator == "hill") {
        xi = hill_estimate(s, a.k);
    } else if (a.estimator == "pickands") {
        xi = pickands_estimate(s, a.k);
    } else {
        throw Error(Errc::InvalidArgument, "unknown estimator '" + a.estimator + "'");
    }
    xi.xi += a.conservative_xi;
    return xi;
}

}  // namespace

int cmd_simulate(const SimulateArgs& a, const RunContext& ctx)
{
    const DistSpec d = parse_dist(a.dist, a.xi, a.beta, a.skew);
    RngStream rng(ctx.seed, streams::sample);
    const OrderedSample s = d.sample(a.n, rng);
    OutputSet out(ctx.out_dir);
    out.add(a.name, serialize(s));
    out.commit(ctx.replay_args, ctx.seed, {});
    *ctx.out << "wrote " << s.size() << " values to " << (ctx.out_dir / a.name).string() << '\n';
    return 0;
}

int cmd_analyze(const AnalyzeArgs& a, const RunContext& ctx)
{
    InputFormat fmt = InputFormat::Plain;
    if (a.format == "csv") {
        fmt = InputFormat::CsvColumn;
    } else {
        require(a.format == "plain", Errc::InvalidArgument, "unknown format '" + a.format + "'");
    }
    const OrderedSample s = ingest(a.input, fmt, a.column);
    const PlotConfig cfg{a.k, a.eps.value_or(0.05), a.alpha};
    const bool truncate = a.eps.has_value();
    const bool index_plot = a.plot == "hill" || a.plot == "pickands";

    if (a.band) {
        require(a.plot == "qq" || a.plot == "me", Errc::InvalidArgument, "--band needs --plot qq or me");
        require(a.eps.has_value(), Errc::InvalidArgument, "--band needs --eps");
    }

    std::optional<TailIndexEstimate> xi;
    if (!index_plot || a.xi) {
        xi = estimate_xi(s, a);
    }

    PlotSet plot;
    std::optional<ReferenceLine> line;
    if (a.plot == "qq") {
        plot = qq_set(s, cfg, truncate);
        line = ReferenceLine{xi->xi, 0.0};
    } else if (a.plot == "qq-normalized") {
        plot = qq_normalized_set(s, cfg, *xi, truncate);
        line = ReferenceLine{xi->xi, 0.0};
    } else if (a.plot == "me") {
        plot = me_set(s, cfg, truncate);
        if (xi->xi < 1.0) {
            line = ReferenceLine{xi->xi / (1.0 - xi->xi), 0.0};
        }
    } else if (a.plot == "me-normalized") {
        const MeRegime regime = xi->xi < 0.5 ? MeRegime::LtHalf : xi->xi < 1.0 ? MeRegime::GtHalf : MeRegime::GtOne;
        plot = me_normalized_set(s, cfg, *xi, regime, std::nullopt, truncate);
    } else if (a.plot == "hill") {
        plot = hill_plot(s, a.k);
    } else if (a.plot == "pickands") {
        plot = pickands_plot(s, a.k);
    } else {
        throw Error(Errc::InvalidArgument, "unknown plot '" + a.plot + "'");
    }
    if (index_plot && xi) {
        line = ReferenceLine{0.0, xi->xi};
    }

    std::vector<ConfidenceBand> bands;
    std::optional<ConfidenceBand> main_band;
    if (a.band) {
        MeBandOptions me;
        me.bridge = {a.paths, a.grid, ctx.threads};
        me.stilde_method = parse_method(a.stilde_method);
        me.stilde_draws = a.stilde_draws;
        const RngStream rng(ctx.seed, streams::band);
        auto build = [&](double alpha) {
            PlotConfig c = cfg;
            c.alpha = alpha;
            return a.plot == "qq" ? qq_band(s, c, *xi) : me_band(s, c, *xi, rng, me);
        };
        main_band = build(a.alpha);
        if (a.multi_alpha) {
            for (double alpha : {0.01, 0.05, 0.10}) {
                bands.push_back(alpha == a.alpha ? *main_band : build(alpha));
            }
        } else {
            bands.push_back(*main_band);
        }
        plot = main_band->base;
    }

    json meta{{"plot", std::string(plot_kind_name(plot.kind))},
              {"input", a.input.string()},
              {"n", s.size()},
              {"k", a.k},
              {"points", plot.points.size()},
              {"truncated", plot.truncated}};
    meta["eps"] = a.eps ? json(*a.eps) : json(nullptr);
    if (xi) {
        meta["xi_hat"] = {{"value", xi->xi},
                          {"method", std::string(method_name(xi->method))},
                          {"k", xi->k},
                          {"conservative_increment", a.conservative_xi}};
    }
    meta["normalizers"] = plot.normalizers;
    if (main_band) {
        meta["band"] = band_json(*main_band);
        if (a.multi_alpha) {
            meta["multi_alpha"] = json::array();
            for (const auto& b : bands) {
                meta["multi_alpha"].push_back(band_json(b));
            }
        }
    }

    OutputSet out(ctx.out_dir);
    out.add("plot.csv", points_csv(plot));
    if (main_band) {
        out.add("band.csv", band_csv(*main_band));
    }
    out.add("analysis.json", meta.dump(2) + '\n');
    if (!a.svg.empty()) {
        std::string title = std::string(plot_kind_name(plot.kind)) + " plot, k=" + std::to_string(a.k);
        if (main_band) {
            title += ", " + std::string(band_regime_name(main_band->regime)) + " band";
        }
        out.add(a.svg, render_svg(plot, bands, line, title));
    }
    std::vector<std::filesystem::path> inputs{a.input};
    out.commit(ctx.replay_args, ctx.seed, inputs);

    *ctx.out << plot_kind_name(plot.kind) << " plot: " << plot.points.size() << " points";
    if (xi) {
        *ctx.out << ", xi_hat=" << format_double(xi->xi) << " (" << method_name(xi->method) << ", k=" << xi->k << ")";
    }
    *ctx.out << '\n';
    if (main_band) {
        *ctx.out << band_regime_name(main_band->regime) << " band at level " << format_double(main_band->level)
                 << '\n';
        for (const auto& b : bands) {
            if (!b.warning.empty()) {
                *ctx.err << "warning: " << b.warning << '\n';
            }
        }
    }
    return 0;
}

int cmd_coverage(const CoverageArgs& a, const RunContext& ctx)
{
    const DistSpec d = parse_dist(a.dist, a.xi, a.beta, a.skew);
    CoveragePlot plot = CoveragePlot::Qq;
    if (a.plot == "me") {
        plot = CoveragePlot::Me;
    } else {
        require(a.plot == "qq", Errc::InvalidArgument, "--plot must be qq or me");
    }
    const PlotConfig cfg{a.k, a.eps, a.alpha};
    CoverageOptions opts;
    opts.me.bridge = {a.paths, a.grid, ctx.threads};
    opts.me.stilde_method = parse_method(a.stilde_method);
    opts.me.stilde_draws = a.stilde_draws;
    opts.threads = ctx.threads;
    opts.fixed_xi = a.fixed_xi;
    opts.xi_inflation = a.conservative_xi;
    const auto report = coverage_experiment(d, a.n, cfg, plot, a.reps, RngStream(ctx.seed, streams::coverage), opts);

    json j{{"distribution", dist_json(d)},
           {"n", a.n},
           {"k", a.k},
           {"eps", a.eps},
           {"alpha", a.alpha},
           {"plot", a.plot},
           {"replications", report.replications},
           {"coverage", report.coverage},
           {"failures", report.failures}};
    j["replicates"] = json::array();
    for (std::size_t r = 0; r < report.replicates.size(); ++r) {
        const auto& rep = report.replicates[r];
        json e{{"index", r}, {"covered", rep.covered}, {"xi_hat", rep.xi_hat}};
        if (!rep.error.empty()) {
            e["error"] = rep.error;
        }
        j["replicates"].push_back(std::move(e));
    }
    OutputSet out(ctx.out_dir);
    out.add("coverage.json", j.dump(2) + '\n');
    out.commit(ctx.replay_args, ctx.seed, {});
    *ctx.out << "coverage " << format_double(report.coverage) << " over " << report.replications
             << " replications (" << report.failures << " failed)\n";
    return 0;
}

namespace {

class QuantileCache {
public:
    explicit QuantileCache(std::filesystem::path dir) : dir_(std::move(dir))
    {
        if (dir_.empty()) {
            return;
        }
        std::ifstream in(file());
        std::string line;
        while (std::getline(in, line)) {
            std::istringstream ss(line);
            std::string key, value, se, source, paths, grid;
            if (std::getline(ss, key, ',') && std::getline(ss, value, ',') && std::getline(ss, se, ',') &&
                std::getline(ss, source, ',') && std::getline(ss, paths, ',') && std::getline(ss, grid)) {
                QuantileEstimate q;
                q.value = std::stod(value);
                q.std_error = std::stod(se);
                q.source = source == "series"         ? QuantileEstimate::Source::Series
                           : source == "monte-carlo" ? QuantileEstimate::Source::MonteCarlo
                                                     : QuantileEstimate::Source::CfInversion;
                q.n_paths = std::stoull(paths);
                q.grid_m = std::stoull(grid);
                entries_[key] = q;
            }
        }
    }

    const QuantileEstimate* find(const std::string& key) const
    {
        const auto it = entries_.find(key);
        return it == entries_.end() ? nullptr : &it->second;
    }

    void store(const std::string& key, const QuantileEstimate& q)
    {
        entries_[key] = q;
        if (dir_.empty()) {
            return;
        }
        std::filesystem::create_directories(dir_);
        std::ofstream(file(), std::ios::app) << key << ',' << format_double(q.value) << ','
                                              << format_double(q.std_error) << ',' << source_name(q.source)
                                              << ',' << q.n_paths << ',' << q.grid_m << '\n';
    }

private:
    std::filesystem::path file() const { return dir_ / "quantiles.csv"; }

    std::filesystem::path dir_;
    std::map<std::string, QuantileEstimate> entries_;
};

}  // namespace

int cmd_quantiles(const QuantilesArgs& a, const RunContext& ctx)
{
    const std::string& f = a.functional;
    std::vector<std::string> methods;
    if (f == "qq-sup") {
        require(a.method == "auto" || a.method == "series", Errc::InvalidArgument, "qq-sup uses the series method");
        methods = {"series"};
    } else if (f == "me-c" || f == "me-d") {
        require(a.method == "auto" || a.method == "monte-carlo", Errc::InvalidArgument,
                f + " uses the monte-carlo method");
        methods = {"monte-carlo"};
    } else if (f == "stilde") {
        if (a.method == "both") {
            methods = {"cf-inversion", "monte-carlo"};
        } else {
            methods = {a.method == "auto" ? "cf-inversion" : a.method};
            parse_method(methods[0]);
        }
    } else {
        throw Error(Errc::InvalidArgument, "unknown functional '" + f + "'");
    }

    QuantileCache cache(a.cache_dir);
    json results = json::array();
    for (double level : a.levels) {
        require(level > 0.0 && level < 1.0, Errc::InvalidArgument, "--level must lie in (0,1)");
        std::vector<QuantileEstimate> per_method;
        for (const auto& m : methods) {
            std::string key = "functional=" + f + ";level=" + format_double(level) + ";method=" + m;
            if (f != "qq-sup") {
                key += ";xi=" + format_double(a.xi);
            }
            if (f != "stilde") {
                key += ";eps=" + format_double(a.eps);
            }
            if (m == "monte-carlo") {
                key += ";seed=" + std::to_string(ctx.seed);
                key += f == "stilde" ? ";draws=" + std::to_string(a.draws)
                                     : ";paths=" + std::to_string(a.paths) + ";grid=" + std::to_string(a.grid);
            }
            bool hit = false;
            QuantileEstimate q;
            if (const auto* cached = cache.find(key)) {
                q = *cached;
                q.level = level;
                hit = true;
            } else {
                const BridgeMcOptions bridge{a.paths, a.grid, ctx.threads};
                if (f == "qq-sup") {
                    q = qq_sup_quantile(level, a.eps);
                } else if (f == "me-c") {
                    q = me_c_quantile(a.xi, a.eps, level, RngStream(ctx.seed, streams::bridge), bridge);
                } else if (f == "me-d") {
                    q = me_band_quantiles(a.xi, a.eps, level, RngStream(ctx.seed, streams::bridge), bridge).d;
                } else {
                    require(a.xi > 0.5 && a.xi < 1.0, Errc::DomainError, "stilde needs 1/2 < xi < 1");
                    const StableSpec spec{1.0 / a.xi, 1.0, StableSpec::Kind::LimitSTilde};
                    q = limit_quantile(spec, level, parse_method(m), RngStream(ctx.seed, streams::stilde),
                                       {a.draws, ctx.threads});
                }
                cache.store(key, q);
            }
            json e = quantile_json(q);
            e["functional"] = f;
            e["method"] = m;
            e["cache_hit"] = hit;
            if (f != "qq-sup") {
                e["xi"] = a.xi;
            }
            if (f != "stilde") {
                e["eps"] = a.eps;
            }
            results.push_back(std::move(e));
            per_method.push_back(q);
        }
        if (per_method.size() == 2) {
            const double diff = std::abs(per_method[0].value - per_method[1].value);
            const double combined = std::hypot(per_method[0].std_error, per_method[1].std_error);
            results.push_back({{"functional", f},
                               {"level", level},
                               {"comparison", "cf-inversion vs monte-carlo"},
                               {"difference", diff},
                               {"combined_error", combined},
                               {"within_3_combined_errors", diff <= 3.0 * combined}});
        }
    }

    const std::string text = json{{"quantiles", results}}.dump(2) + '\n';
    OutputSet out(ctx.out_dir);
    out.add("quantiles.json", text);
    out.commit(ctx.replay_args, ctx.seed, {});
    *ctx.out << text;
    return 0;
}

}  // namespace tailband::cli
