#include "tailband/limitsim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "tailband/error.hpp"
#include "tailband/parallel.hpp"
#include "tailband/special.hpp"
#include "tailband/stats.hpp"

namespace tailband {

double prop51_probability(double M, double delta, std::size_t terms, SeriesForm form)
{
    require(M > 0.0 && delta > 0.0 && terms >= 1, Errc::InvalidArgument,
            "prop51 needs M > 0, delta > 0, terms >= 1");
    const double x = M * std::sqrt(delta);
    const double shift = form == SeriesForm::Proof ? 0.0 : 2.0;
    double sum = 0.0;
    for (std::size_t k = 1; k <= terms; ++k) {
        const double kk = static_cast<double>(k);
        // Phi(u) - Phi(l) = sf(l) - sf(u).
        const double l = (4.0 * kk - 3.0 + shift) * x;
        const double u = (4.0 * kk - 1.0 + shift) * x;
        sum += normal_sf(l) - normal_sf(u);
    }
    return std::clamp(4.0 * sum, 0.0, 1.0);
}

double doob_band_probability(double a, double b, double alpha, double beta, std::size_t terms)
{
    require(a >= 0.0 && alpha >= 0.0 && b > 0.0 && beta > 0.0 && terms >= 1, Errc::InvalidArgument,
            "Doob formula needs a, alpha >= 0 and b, beta > 0");
    double sum = 0.0;
    for (std::size_t kk = 1; kk <= terms; ++kk) {
        const double k = static_cast<double>(kk);
        const double cross = a * beta + b * alpha;
        const double A = k * k * a * b + (k - 1) * (k - 1) * alpha * beta + k * (k - 1) * cross;
        const double B = (k - 1) * (k - 1) * a * b + k * k * alpha * beta + k * (k - 1) * cross;
        const double C = k * k * (a * b + alpha * beta) + k * (k - 1) * a * beta + k * (k + 1) * b * alpha;
        const double D = k * k * (a * b + alpha * beta) + k * (k + 1) * a * beta + k * (k - 1) * b * alpha;
        sum += std::exp(-2.0 * A) + std::exp(-2.0 * B) - std::exp(-2.0 * C) - std::exp(-2.0 * D);
    }
    return std::clamp(1.0 - sum, 0.0, 1.0);
}

QuantileEstimate qq_sup_quantile(double level, double eps, SeriesForm form)
{
    require(level > 0.0 && level < 1.0, Errc::InvalidArgument, "level must lie in (0,1)");
    require(eps > 0.0 && eps < 1.0, Errc::InvalidArgument, "eps must lie in (0,1)");
    const double delta = eps / (1.0 - eps);
    const double target = 1.0 - level;
    const double rd = std::sqrt(delta);
    auto excess = [&](double M) { return prop51_probability(M, delta, 15, form) - target; };

    // The 15-term sum is only reliable for M sqrt(delta) >= 0.1.
    double lo = 0.1 / rd;
    double hi = 1.0 / rd;
    require(excess(lo) > 0.0, Errc::ConvergenceFailure, "level too small for the series bracket");
    for (int i = 0; i < 200 && excess(hi) > 0.0; ++i) {
        lo = hi;
        hi *= 2.0;
    }
    require(excess(hi) <= 0.0, Errc::ConvergenceFailure, "could not bracket the QQ quantile");
    double mid = 0.5 * (lo + hi);
    for (int i = 0; i < 200; ++i) {
        mid = 0.5 * (lo + hi);
        const double e = excess(mid);
        if (std::abs(e) <= 1e-12 || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
            break;
        }
        (e > 0.0 ? lo : hi) = mid;
    }
    require(std::abs(excess(mid)) <= 1e-8, Errc::ConvergenceFailure, "QQ quantile bisection did not converge");
    return {mid, level, QuantileEstimate::Source::Series, 0.0, 0, 0};
}

void simulate_bridge_into(std::size_t m, RngStream& rng, std::vector<double>& out)
{
    require(m >= 2, Errc::InvalidArgument, "bridge grid needs m >= 2");
    out.resize(m);
    const double sd = 1.0 / std::sqrt(static_cast<double>(m));
    double w = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        w += sd * rng.normal();
        out[j] = w;
    }
    const double w1 = out[m - 1];
    for (std::size_t j = 0; j + 1 < m; ++j) {
        out[j] -= static_cast<double>(j + 1) / static_cast<double>(m) * w1;
    }
    out[m - 1] = 0.0;
}

BridgePath simulate_bridge(std::size_t m, RngStream& rng)
{
    BridgePath p;
    p.m = m;
    simulate_bridge_into(m, rng, p.values);
    return p;
}

namespace {

// Per-grid-point weights shared by all paths of one run.
struct FunctionalWeights {
    std::size_t first = 0;        // first 0-based index with t >= eps
    std::vector<double> c_weight;  // xi t^{-(1+xi)}
    std::vector<double> y_weight;  // t^{-(1+xi)}
    std::vector<double> d_scale;   // xi / t
    double h = 0.0;

    FunctionalWeights(std::size_t m, double xi, double eps, bool want_d)
    {
        h = 1.0 / static_cast<double>(m);
        first = static_cast<std::size_t>(std::ceil(eps * static_cast<double>(m) - 1e-9));
        first = first == 0 ? 0 : first - 1;
        c_weight.resize(m);
        if (want_d) {
            y_weight.resize(m);
            d_scale.resize(m);
        }
        for (std::size_t j = 0; j < m; ++j) {
            const double t = static_cast<double>(j + 1) * h;
            const double p = std::pow(t, -(1.0 + xi));
            c_weight[j] = xi * p;
            if (want_d) {
                y_weight[j] = p;
                d_scale[j] = xi / t;
            }
        }
    }

    double c(std::span<const double> b) const
    {
        double s = -std::numeric_limits<double>::infinity();
        for (std::size_t j = first; j < b.size(); ++j) {
            s = std::max(s, c_weight[j] * b[j]);
        }
        return s;
    }

    double d(std::span<const double> b) const
    {
        double s = -std::numeric_limits<double>::infinity();
        double integral = 0.0;
        double prev = y_weight[0] * b[0];
        if (first == 0) {
            s = 0.0;
        }
        for (std::size_t j = 1; j < b.size(); ++j) {
            const double cur = y_weight[j] * b[j];
            integral += 0.5 * h * (prev + cur);
            prev = cur;
            if (j >= first) {
                s = std::max(s, d_scale[j] * integral);
            }
        }
        return s;
    }
};

void check_functional_args(double xi, double eps, const BridgeMcOptions& opts)
{
    require(xi > 0.0 && std::isfinite(xi), Errc::DomainError, "xi must be positive");
    require(eps > 0.0 && eps < 1.0, Errc::InvalidArgument, "eps must lie in (0,1)");
    require(opts.paths >= 1000, Errc::InvalidArgument, "bridge Monte Carlo needs >= 1000 paths");
    require(opts.grid >= 1000, Errc::InvalidArgument, "bridge Monte Carlo needs grid >= 1000");
}

}  // namespace

double me_c_functional(std::span<const double> bridge, double xi, double eps)
{
    return FunctionalWeights(bridge.size(), xi, eps, false).c(bridge);
}

double me_d_functional(std::span<const double> bridge, double xi, double eps)
{
    return FunctionalWeights(bridge.size(), xi, eps, true).d(bridge);
}

FunctionalDraws simulate_me_functionals(double xi, double eps, bool want_d, const RngStream& rng,
                                        const BridgeMcOptions& opts)
{
    const FunctionalWeights w(opts.grid, xi, eps, want_d);
    FunctionalDraws out;
    out.c.resize(opts.paths);
    if (want_d) {
        out.d.resize(opts.paths);
    }
    constexpr std::size_t chunk = 64;
    const std::size_t chunks = (opts.paths + chunk - 1) / chunk;
    parallel_for(chunks, opts.threads, [&](std::size_t ch) {
        std::vector<double> path;
        const std::size_t end = std::min(opts.paths, (ch + 1) * chunk);
        for (std::size_t p = ch * chunk; p < end; ++p) {
            RngStream local = rng.derive(p);
            simulate_bridge_into(opts.grid, local, path);
            out.c[p] = w.c(path);
            if (want_d) {
                out.d[p] = w.d(path);
            }
        }
    });
    return out;
}

MeQuantiles me_band_quantiles(double xi, double eps, double level, const RngStream& rng,
                              const BridgeMcOptions& opts)
{
    require(xi > 0.0 && xi < 0.5, Errc::RegimeMismatch, "ME band quantiles need 0 < xi < 1/2");
    require(level > 0.0 && level < 1.0, Errc::InvalidArgument, "level must lie in (0,1)");
    check_functional_args(xi, eps, opts);
    const auto draws = simulate_me_functionals(xi, eps, true, rng, opts);
    auto estimate = [&](const std::vector<double>& v) {
        return QuantileEstimate{empirical_quantile(v, level), level, QuantileEstimate::Source::MonteCarlo,
                                batch_quantile_stderr(v, level, 10), opts.paths, opts.grid};
    };
    return {estimate(draws.c), estimate(draws.d)};
}

QuantileEstimate me_c_quantile(double xi, double eps, double level, const RngStream& rng,
                               const BridgeMcOptions& opts)
{
    require(level > 0.0 && level < 1.0, Errc::InvalidArgument, "level must lie in (0,1)");
    check_functional_args(xi, eps, opts);
    const auto draws = simulate_me_functionals(xi, eps, false, rng, opts);
    return {empirical_quantile(draws.c, level), level, QuantileEstimate::Source::MonteCarlo,
            batch_quantile_stderr(draws.c, level, 10), opts.paths, opts.grid};
}

namespace {

struct Interval {
    double t0;
    double a;
    double t1;
    double b;
    int level;

    double top() const { return std::max(std::abs(a), std::abs(b)); }
};

double sup_abs_path(RngStream& rng, std::vector<Interval>& stack)
{
    constexpr int coarse = 10;
    constexpr int finest_level = 10;  // 10 * 2^10 = 10240 steps on [0, 1]
    constexpr double prune_exponent = 30.0;
    const double sd0 = std::sqrt(1.0 / coarse);

    stack.clear();
    double sup = 0.0;
    std::array<Interval, coarse> first{};
    double w = 0.0;
    for (int i = 0; i < coarse; ++i) {
        const double next = w + sd0 * rng.normal();
        first[static_cast<std::size_t>(i)] = {i / double(coarse), w, (i + 1) / double(coarse), next, 0};
        sup = std::max(sup, std::abs(next));
        w = next;
    }
    std::sort(first.begin(), first.end(), [](const Interval& x, const Interval& y) { return x.top() < y.top(); });
    stack.insert(stack.end(), first.begin(), first.end());

    while (!stack.empty()) {
        const Interval iv = stack.back();
        stack.pop_back();
        const double len = iv.t1 - iv.t0;
        // A bridge from a to b over length len exceeds level s > max(a, b)
        // with probability exp(-2 (s - a)(s - b) / len).
        if (2.0 * (sup - iv.a) * (sup - iv.b) >= prune_exponent * len &&
            2.0 * (sup + iv.a) * (sup + iv.b) >= prune_exponent * len) {
            continue;
        }
        if (iv.level == finest_level) {
            const double diff2 = (iv.b - iv.a) * (iv.b - iv.a);
            const double hi = 0.5 * (iv.a + iv.b + std::sqrt(diff2 - 2.0 * len * std::log(rng.uniform())));
            const double lo = 0.5 * (iv.a + iv.b - std::sqrt(diff2 - 2.0 * len * std::log(rng.uniform())));
            sup = std::max({sup, hi, -lo});
            continue;
        }
        const double tm = 0.5 * (iv.t0 + iv.t1);
        const double mid = 0.5 * (iv.a + iv.b) + 0.5 * std::sqrt(len) * rng.normal();
        sup = std::max(sup, std::abs(mid));
        Interval left{iv.t0, iv.a, tm, mid, iv.level + 1};
        Interval right{tm, mid, iv.t1, iv.b, iv.level + 1};
        if (left.top() > right.top()) {
            std::swap(left, right);
        }
        stack.push_back(left);
        stack.push_back(right);
    }
    return sup;
}

}  // namespace

std::vector<double> simulate_sup_abs_bm(std::size_t n, const RngStream& rng, unsigned threads)
{
    constexpr std::size_t chunk = 4096;
    const std::size_t chunks = (n + chunk - 1) / chunk;
    std::vector<double> out(n);
    parallel_for(chunks, threads, [&](std::size_t c) {
        RngStream local = rng.derive(c);
        std::vector<Interval> stack;
        stack.reserve(256);
        const std::size_t end = std::min(n, (c + 1) * chunk);
        for (std::size_t i = c * chunk; i < end; ++i) {
            out[i] = sup_abs_path(local, stack);
        }
    });
    return out;
}

}  // namespace tailband
