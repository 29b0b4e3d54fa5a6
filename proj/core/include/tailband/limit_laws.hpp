#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "tailband/distributions.hpp"
#include "tailband/quantile_estimate.hpp"
#include "tailband/rng.hpp"

namespace tailband {

/// Drift constant of the S1 law: \int_0^\infty (sin x / x^2 - 1/(x(1+x))) dx.
inline constexpr double s1_drift = 0.422784335098467139393487909918;

/// Throws DomainError unless alpha and kind go together:
/// LimitS needs alpha in (0,1) or (1,2), LimitS1 alpha = 1, LimitSTilde
/// alpha in (1,2), SimulationLaw alpha in (0,2].
void validate_limit_spec(const StableSpec& spec);

/// \int_0^1 (e^{i lambda t} - 1 - i lambda t) t^{-1-1/xi} dt by adaptive
/// quadrature after the substitution t = w^{1/(2-1/xi)}.
std::complex<double> stilde_integral(double xi, double lambda);

/// Denominator 1 + i lambda/(1-xi) - (1/xi) I(lambda) of the S̃ CF, from the
/// closed form a lambda^a [E_{1+a}(lambda) - Gamma(-a) e^{-i pi a/2}],
/// a = 1/xi, which stays accurate for large |lambda|.
std::complex<double> stilde_denominator(double xi, double lambda);

/// Characteristic function of the limit variable described by `spec`.
std::complex<double> limit_cf(const StableSpec& spec, double t);

/// Scale sigma with CF exp(-sigma^a |t|^a (1 - i sgn(t) tan(pi a/2))) for
/// the LimitS kind.
double limit_s_scale(double alpha);

/// One draw of the limit variable. S̃ uses the Poisson series
/// representation with small jumps below y0 = 0.01 replaced by their
/// Gaussian approximation.
double draw_limit(const StableSpec& spec, RngStream& rng);

/// Distribution function by Gil-Pelaez inversion of limit_cf. The
/// regularized integrand is tabulated once on a fixed mesh and integrated
/// with Filon weights for exact treatment of e^{i w lambda}.
class CfInverter {
public:
    explicit CfInverter(const StableSpec& spec);

    double cdf(double x) const;

    struct Root {
        double value;
        double error;
    };
    /// Quantile at level q from the extrapolated cdf; the error estimate is
    /// its distance to the root on the fine mesh alone.
    Root quantile(double q) const;

private:
    double cdf_on(double x, std::size_t stride) const;
    /// stride 0 solves on the extrapolated cdf.
    double solve(double q, std::size_t stride) const;

    StableSpec spec_;
    double carrier_ = 0.0;
    double tail_coef_alpha_ = 0.0;
    std::complex<double> tail_coef_{};
    std::vector<double> mesh_;
    std::vector<std::complex<double>> psi_;
};

enum class QuantileMethod { CfInversion, MonteCarlo };

struct LimitQuantileOptions {
    std::size_t mc_draws = 100000;
    unsigned threads = 1;
};

QuantileEstimate limit_quantile(const StableSpec& spec, double q, QuantileMethod method,
                                const RngStream& rng, const LimitQuantileOptions& opts = {});

/// Several levels sharing one inverter or one set of draws.
std::vector<QuantileEstimate> limit_quantiles(const StableSpec& spec, std::span<const double> qs,
                                              QuantileMethod method, const RngStream& rng,
                                              const LimitQuantileOptions& opts = {});

/// n independent draws, generated in fixed chunks with derived streams.
std::vector<double> draw_limit_many(const StableSpec& spec, std::size_t n, const RngStream& rng,
                                    unsigned threads = 1);

}  // namespace tailband
