#include "tailband/limit_laws.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/roots.hpp>

#include "tailband/error.hpp"
#include "tailband/parallel.hpp"
#include "tailband/quadrature.hpp"
#include "tailband/special.hpp"
#include "tailband/stats.hpp"

namespace tailband {

using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;

void validate_limit_spec(const StableSpec& spec)
{
    const double a = spec.alpha;
    switch (spec.kind) {
    case StableSpec::Kind::SimulationLaw:
        require(a > 0.0 && a <= 2.0 && std::abs(spec.skew) <= 1.0, Errc::DomainError,
                "simulation law needs alpha in (0,2] and skew in [-1,1]");
        return;
    case StableSpec::Kind::LimitS:
        require(a > 0.0 && a < 2.0 && a != 1.0, Errc::DomainError,
                "LimitS needs xi in (1/2,1) or xi > 1");
        return;
    case StableSpec::Kind::LimitS1:
        require(a == 1.0, Errc::DomainError, "LimitS1 needs alpha = 1");
        return;
    case StableSpec::Kind::LimitSTilde:
        require(a > 1.0 && a < 2.0, Errc::DomainError, "LimitSTilde needs xi in (1/2,1)");
        return;
    }
}

namespace {

// e^{ix} - 1 - ix without cancellation for small |x|.
cplx expm1_minus_linear(double x)
{
    if (std::abs(x) < 0.5) {
        cplx term = cplx(0.0, x) * cplx(0.0, x) / 2.0;
        cplx sum = term;
        for (int m = 3; m < 24; ++m) {
            term *= cplx(0.0, x) / static_cast<double>(m);
            sum += term;
        }
        return sum;
    }
    return std::exp(cplx(0.0, x)) - 1.0 - cplx(0.0, x);
}

}  // namespace

cplx stilde_integral(double xi, double lambda)
{
    require(xi > 0.5 && xi < 1.0, Errc::DomainError, "S-tilde integral needs xi in (1/2,1)");
    const double a = 1.0 / xi;
    const double p = 1.0 / (2.0 - a);
    if (lambda == 0.0) {
        return 0.0;
    }
    auto f = [&](double w) {
        return p * expm1_minus_linear(lambda * std::pow(w, p)) * std::pow(w, -p * a - 1.0);
    };
    const auto r = integrate<cplx>(f, 0.0, 1.0, 1e-12, 1e-300, 4000);
    require(r.converged || r.error <= 1e-10 * std::abs(r.value), Errc::ConvergenceFailure,
            "S-tilde integral did not converge");
    return r.value;
}

cplx stilde_denominator(double xi, double lambda)
{
    require(xi > 0.5 && xi < 1.0, Errc::DomainError, "S-tilde CF needs xi in (1/2,1)");
    if (lambda == 0.0) {
        return 1.0;
    }
    const double a = 1.0 / xi;
    const double l = std::abs(lambda);
    const cplx g = a * std::pow(l, a) *
                   (oscillatory_tail(1.0 + a, l) -
                    boost::math::tgamma(-a) * std::exp(cplx(0.0, -0.5 * pi * a)));
    return lambda > 0.0 ? g : std::conj(g);
}

double limit_s_scale(double alpha)
{
    const double xi = 1.0 / alpha;
    const double c = std::abs(std::cos(0.5 * pi * alpha));
    const double g = alpha > 1.0 ? boost::math::tgamma(2.0 - alpha) / (1.0 - xi)
                                 : boost::math::tgamma(1.0 - alpha);
    return std::pow(g * c, 1.0 / alpha);
}

cplx limit_cf(const StableSpec& spec, double t)
{
    validate_limit_spec(spec);
    if (t == 0.0) {
        return 1.0;
    }
    switch (spec.kind) {
    case StableSpec::Kind::SimulationLaw:
        return stable_cf(spec.alpha, spec.skew, t);
    case StableSpec::Kind::LimitS: {
        const double a = spec.alpha;
        const double sigma_a = std::pow(limit_s_scale(a), a);
        const double sg = t > 0.0 ? 1.0 : -1.0;
        return std::exp(-sigma_a * std::pow(std::abs(t), a) * cplx(1.0, -sg * std::tan(0.5 * pi * a)));
    }
    case StableSpec::Kind::LimitS1: {
        const double at = std::abs(t);
        const double sg = t > 0.0 ? 1.0 : -1.0;
        return std::exp(cplx(0.0, t * s1_drift) - at * cplx(0.5 * pi, sg * std::log(at)));
    }
    case StableSpec::Kind::LimitSTilde: {
        const double xi = spec.xi();
        cplx g;
        if (std::abs(t) <= 8.0) {
            g = 1.0 + cplx(0.0, t / (1.0 - xi)) - stilde_integral(xi, t) / xi;
        } else {
            g = stilde_denominator(xi, t);
        }
        return std::exp(cplx(0.0, t)) / g;
    }
    }
    return 1.0;
}

double draw_limit(const StableSpec& spec, RngStream& rng)
{
    validate_limit_spec(spec);
    switch (spec.kind) {
    case StableSpec::Kind::SimulationLaw:
        return draw_stable(spec.alpha, spec.skew, rng);
    case StableSpec::Kind::LimitS:
        return limit_s_scale(spec.alpha) * draw_stable(spec.alpha, 1.0, rng);
    case StableSpec::Kind::LimitS1: {
        const double sigma = 0.5 * pi;
        return sigma * draw_stable(1.0, 1.0, rng) + (2.0 / pi) * sigma * std::log(sigma) + s1_drift;
    }
    case StableSpec::Kind::LimitSTilde: {
        constexpr double y0 = 0.01;
        const double xi = spec.xi();
        const double a = spec.alpha;
        const double g1 = rng.exponential();
        double gamma = g1;
        double sum = 1.0;
        for (;;) {
            gamma += rng.exponential();
            const double r = std::pow(gamma / g1, -xi);
            if (r <= y0) {
                break;
            }
            sum += r;
        }
        const double small_var = g1 * a * std::pow(y0, 2.0 - a) / (2.0 - a);
        return sum - g1 * std::pow(y0, 1.0 - a) / (1.0 - xi) + std::sqrt(small_var) * rng.normal();
    }
    }
    return 0.0;
}

std::vector<double> draw_limit_many(const StableSpec& spec, std::size_t n, const RngStream& rng,
                                    unsigned threads)
{
    validate_limit_spec(spec);
    constexpr std::size_t chunk = 4096;
    const std::size_t chunks = (n + chunk - 1) / chunk;
    std::vector<double> out(n);
    parallel_for(chunks, threads, [&](std::size_t c) {
        RngStream local = rng.derive(c);
        const std::size_t end = std::min(n, (c + 1) * chunk);
        for (std::size_t i = c * chunk; i < end; ++i) {
            out[i] = draw_limit(spec, local);
        }
    });
    return out;
}

namespace {

// \int_0^1 e^{i theta u} du and \int_0^1 u e^{i theta u} du.
void filon_weights(double theta, cplx& w0, cplx& w1)
{
    if (std::abs(theta) < 0.2) {
        cplx power = 1.0;
        double fact = 1.0;
        w0 = 0.0;
        w1 = 0.0;
        for (int n = 0; n < 14; ++n) {
            if (n > 0) {
                power *= cplx(0.0, theta);
                fact *= n;
            }
            w0 += power / (fact * (n + 1));
            w1 += power / (fact * (n + 2));
        }
        return;
    }
    const cplx e = std::exp(cplx(0.0, theta));
    w0 = (e - 1.0) / cplx(0.0, theta);
    w1 = e / cplx(0.0, theta) + (e - 1.0) / (theta * theta);
}

void append_uniform(std::vector<double>& mesh, double to, double h)
{
    const double from = mesh.back();
    const auto steps = static_cast<std::size_t>(std::ceil((to - from) / h - 1e-9));
    for (std::size_t i = 1; i <= steps; ++i) {
        mesh.push_back(from + (to - from) * static_cast<double>(i) / static_cast<double>(steps));
    }
}

}  // namespace

CfInverter::CfInverter(const StableSpec& spec) : spec_(spec)
{
    validate_limit_spec(spec);
    double upper = 2000.0;
    switch (spec.kind) {
    case StableSpec::Kind::LimitSTilde: {
        carrier_ = 1.0;
        const double a = spec.alpha;
        tail_coef_alpha_ = a;
        // 1/g ~ 1 / (a Kc lambda^a) for large lambda.
        tail_coef_ = 1.0 / (-a * boost::math::tgamma(-a) * std::exp(cplx(0.0, -0.5 * pi * a)));
        break;
    }
    case StableSpec::Kind::LimitS1:
        carrier_ = s1_drift;
        upper = 40.0 / (0.5 * pi);
        break;
    case StableSpec::Kind::LimitS: {
        const double sa = std::pow(limit_s_scale(spec.alpha), spec.alpha);
        upper = std::min(2000.0, std::pow(40.0 / sa, 1.0 / spec.alpha));
        break;
    }
    case StableSpec::Kind::SimulationLaw:
        upper = std::min(2000.0, std::pow(40.0, 1.0 / spec.alpha));
        break;
    }

    mesh_.push_back(0.0);
    for (double l = 1e-10; l < 0.05; l *= 1.5) {
        mesh_.push_back(l);
    }
    append_uniform(mesh_, std::min(upper, 2.0), 0.002);
    if (upper > 2.0) {
        append_uniform(mesh_, std::min(upper, 20.0), 0.01);
    }
    if (upper > 20.0) {
        append_uniform(mesh_, upper, 0.05);
    }
    // Even count of intervals so that the stride-2 mesh ends at `upper`.
    if ((mesh_.size() - 1) % 2 == 1) {
        const double last = mesh_.back();
        const double prev = mesh_[mesh_.size() - 2];
        mesh_.back() = 0.5 * (prev + last);
        mesh_.push_back(last);
    }

    psi_.resize(mesh_.size());
    // psi(lambda) = (phi(lambda) e^{-i c lambda} - 1) / lambda, with the
    // lambda -> 0 limit i (E X - c) taken from the first positive node.
    for (std::size_t j = 1; j < mesh_.size(); ++j) {
        const double l = mesh_[j];
        psi_[j] = (limit_cf(spec_, l) * std::exp(cplx(0.0, -carrier_ * l)) - 1.0) / l;
    }
    psi_[0] = psi_[1];
}

double CfInverter::cdf(double x) const
{
    // Filon with linear interpolation is second order in the mesh width.
    return (4.0 * cdf_on(x, 1) - cdf_on(x, 2)) / 3.0;
}

double CfInverter::cdf_on(double x, std::size_t stride) const
{
    const double omega = carrier_ - x;
    double integral = 0.0;
    for (std::size_t j = 0; j + stride < mesh_.size(); j += stride) {
        const double l0 = mesh_[j];
        const double h = mesh_[j + stride] - l0;
        cplx w0;
        cplx w1;
        filon_weights(omega * h, w0, w1);
        const cplx seg = std::exp(cplx(0.0, omega * l0)) * h *
                         (psi_[j] * w0 + (psi_[j + stride] - psi_[j]) * w1);
        integral += seg.imag();
    }

    const double upper = mesh_.back();
    const double aw = std::abs(omega);
    if (omega != 0.0) {
        const double sg = omega > 0.0 ? 1.0 : -1.0;
        integral += sg * (0.5 * pi - oscillatory_tail(1.0, aw * upper).imag());
    }
    if (tail_coef_alpha_ > 0.0) {
        // \int_T^\infty e^{i w l} l^{-1-a} dl times the leading coefficient.
        const double a = tail_coef_alpha_;
        cplx t;
        if (omega == 0.0) {
            t = std::pow(upper, -a) / a;
        } else {
            t = std::pow(aw, a) * oscillatory_tail(1.0 + a, aw * upper);
            if (omega < 0.0) {
                t = std::conj(t);
            }
        }
        integral += (tail_coef_ * t).imag();
    }
    return 0.5 - integral / pi;
}

double CfInverter::solve(double q, std::size_t stride) const
{
    auto f = [&](double x) { return (stride == 0 ? cdf(x) : cdf_on(x, stride)) - q; };
    double lo = carrier_ - 1.0;
    double hi = carrier_ + 1.0;
    double flo = f(lo);
    double fhi = f(hi);
    for (int i = 0; i < 80 && flo > 0.0; ++i) {
        hi = lo;
        fhi = flo;
        lo = carrier_ - 2.0 * (carrier_ - lo);
        flo = f(lo);
    }
    for (int i = 0; i < 80 && fhi < 0.0; ++i) {
        lo = hi;
        flo = fhi;
        hi = carrier_ + 2.0 * (hi - carrier_);
        fhi = f(hi);
    }
    require(flo <= 0.0 && fhi >= 0.0, Errc::ConvergenceFailure, "CF inversion could not bracket the quantile");
    std::uintmax_t iters = 200;
    auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-10 * std::max(1.0, std::abs(a)); };
    const auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
    return 0.5 * (r.first + r.second);
}

CfInverter::Root CfInverter::quantile(double q) const
{
    require(q > 0.0 && q < 1.0, Errc::InvalidArgument, "quantile level must lie in (0,1)");
    const double extrapolated = solve(q, 0);
    const double fine = solve(q, 1);
    return {extrapolated, std::max(std::abs(extrapolated - fine), 1e-9)};
}

std::vector<QuantileEstimate> limit_quantiles(const StableSpec& spec, std::span<const double> qs,
                                              QuantileMethod method, const RngStream& rng,
                                              const LimitQuantileOptions& opts)
{
    validate_limit_spec(spec);
    for (double q : qs) {
        require(q > 0.0 && q < 1.0, Errc::InvalidArgument, "quantile level must lie in (0,1)");
    }
    std::vector<QuantileEstimate> out;
    if (method == QuantileMethod::CfInversion) {
        const CfInverter inv(spec);
        for (double q : qs) {
            const auto r = inv.quantile(q);
            out.push_back({r.value, q, QuantileEstimate::Source::CfInversion, r.error, 0, 0});
        }
        return out;
    }
    require(opts.mc_draws >= 1000, Errc::InvalidArgument, "Monte Carlo quantiles need >= 1000 draws");
    std::vector<double> draws = draw_limit_many(spec, opts.mc_draws, rng, opts.threads);
    std::vector<double> sorted(draws);
    std::sort(sorted.begin(), sorted.end());
    for (double q : qs) {
        const double se = batch_quantile_stderr(draws, q, 10);
        out.push_back({sorted_quantile(sorted, q), q, QuantileEstimate::Source::MonteCarlo, se,
                       opts.mc_draws, 0});
    }
    return out;
}

QuantileEstimate limit_quantile(const StableSpec& spec, double q, QuantileMethod method,
                                const RngStream& rng, const LimitQuantileOptions& opts)
{
    const double qs[] = {q};
    return limit_quantiles(spec, qs, method, rng, opts).front();
}

}  // namespace tailband
