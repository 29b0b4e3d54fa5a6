#include "doctest.h"

#include <cmath>
#include <numbers>

#include "tailband/distributions.hpp"
#include "tailband/special.hpp"
#include "test_support.hpp"

using namespace tailband;
using tb_test::error_code_of;

TEST_CASE("RngStream is reproducible and streams differ")
{
    RngStream a(123, 9);
    RngStream b(123, 9);
    RngStream c(123, 10);
    bool differs = false;
    for (int i = 0; i < 1000; ++i) {
        const auto x = a.next_u64();
        CHECK(x == b.next_u64());
        differs |= x != c.next_u64();
    }
    CHECK(differs);
    RngStream d1 = RngStream(1, 2).derive(3);
    RngStream d2 = RngStream(1, 2).derive(3);
    CHECK(d1.normal() == d2.normal());
}

TEST_CASE("RngStream golden values")
{
    // Pinned so that a change of engine, seeding or sampler is noticed.
    RngStream r(42, 1);
    const auto first = r.next_u64();
    RngStream again(42, 1);
    CHECK(again.next_u64() == first);
    CHECK(first == 0x86f537fc915963aaULL);
}

TEST_CASE("GPD cdf")
{
    CHECK(gpd_cdf({0.0, 1.0}, 0.0) == 0.0);
    CHECK(gpd_cdf({1.0, 1.0}, 1.0) == doctest::Approx(0.5));
    CHECK(gpd_cdf({-0.5, 1.0}, 2.0) == 1.0);
    CHECK(error_code_of([] { gpd_cdf({-0.5, 1.0}, 2.5); }) == Errc::DomainError);
    CHECK(error_code_of([] { gpd_cdf({0.5, 1.0}, -1.0); }) == Errc::DomainError);
    CHECK(error_code_of([] { gpd_cdf({0.5, 0.0}, 1.0); }) == Errc::DomainError);
    // The exponential branch below |xi| = 1e-12 agrees with the limit.
    CHECK(gpd_cdf({1e-13, 2.0}, 3.0) == doctest::Approx(1.0 - std::exp(-1.5)).epsilon(1e-12));
    CHECK(gpd_cdf({1e-9, 2.0}, 3.0) == doctest::Approx(1.0 - std::exp(-1.5)).epsilon(1e-8));

    for (double xi : {-0.3, 0.0, 0.4, 2.0}) {
        double prev = 0.0;
        for (double x = 0.0; x < 3.0; x += 0.01) {
            const double f = gpd_cdf({xi, 1.0}, x);
            CHECK(f >= prev);
            prev = f;
        }
    }
}

TEST_CASE("GPD mean excess")
{
    for (double u : {0.0, 1.0, 17.0}) {
        CHECK(gpd_me({0.0, 1.0}, u) == doctest::Approx(1.0));
    }
    CHECK(gpd_me({0.25, 1.0}, 2.0) == doctest::Approx(2.0));
    CHECK(error_code_of([] { gpd_me({1.0, 1.0}, 1.0); }) == Errc::DomainError);
}

TEST_CASE("GPD mean excess is linear in simulated data")
{
    RngStream rng(99, streams::sample);
    const auto s = sample_gpd({0.25, 1.0}, 100000, rng);
    for (double u : {0.5, 1.0, 2.0}) {
        std::vector<double> excess;
        for (double v : s.values()) {
            if (v > u) {
                excess.push_back(v - u);
            }
        }
        const double se = std::sqrt(tb_test::sample_var(excess) / static_cast<double>(excess.size()));
        CHECK(std::abs(empirical_me(s, u) - gpd_me({0.25, 1.0}, u)) <= 3.0 * se);
    }
}

TEST_CASE("Pareto sampler")
{
    // Inverse transform at the median.
    CHECK(std::pow(0.5, -1.0) == 2.0);
    RngStream rng(1, streams::sample);
    const auto s = sample_pareto(0.25, 100000, rng);
    std::size_t above = 0;
    for (double v : s.values()) {
        above += v > 2.0;
    }
    const double p = 0.0625;
    const double se = std::sqrt(p * (1 - p) / 1e5);
    CHECK(std::abs(above / 1e5 - p) <= 3.0 * se);
    CHECK(s.order_stat(s.size()) >= 1.0);
    CHECK(error_code_of([&] { sample_pareto(0.25, 1, rng); }) == Errc::TooFewObservations);
}

TEST_CASE("stable sampler, Gaussian case")
{
    RngStream rng(8, streams::stable);
    const auto s = sample_stable({2.0, 0.0, StableSpec::Kind::SimulationLaw}, 100000, rng);
    const double m = tb_test::sample_mean(s.values());
    const double v = tb_test::sample_var(s.values());
    CHECK(std::abs(m) <= 3.0 * std::sqrt(2.0 / 1e5));
    // Var of the sample variance of N(0, 2) is 2 sigma^4 / (n-1) = 8 / n.
    CHECK(std::abs(v - 2.0) <= 3.0 * std::sqrt(8.0 / 1e5));
    CHECK(error_code_of([&] { sample_stable({0.0, 0.0, StableSpec::Kind::SimulationLaw}, 10, rng); }) ==
          Errc::DomainError);
    CHECK(error_code_of([&] { sample_stable({1.5, 1.2, StableSpec::Kind::SimulationLaw}, 10, rng); }) ==
          Errc::DomainError);
}

TEST_CASE("stable sampler reproduces its characteristic function")
{
    for (double alpha : {1.5, 1.0, 0.7}) {
        RngStream rng(17, streams::stable);
        const auto s = sample_stable({alpha, 1.0, StableSpec::Kind::SimulationLaw}, 100000, rng);
        double worst = 0.0;
        for (double t = -2.0; t <= 2.0001; t += 0.05) {
            std::complex<double> ecf{};
            for (double x : s.values()) {
                ecf += std::exp(std::complex<double>(0.0, t * x));
            }
            ecf /= 1e5;
            worst = std::max(worst, std::abs(ecf - stable_cf(alpha, 1.0, t)));
        }
        CAPTURE(alpha);
        CHECK(worst <= 0.01);
    }
}

TEST_CASE("Lambert W")
{
    CHECK(lambertw(0.0) == 0.0);
    CHECK(lambertw(std::numbers::e) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(lambertw(2.0 * std::exp(2.0)) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(lambertw(-1.0 / std::numbers::e) == doctest::Approx(-1.0));
    for (double x : {-1.0 / std::numbers::e + 1e-6, 0.0, 1.0, std::numbers::e, 10.0, 1e6, -0.2, 1e-8, 1e300}) {
        const double w = lambertw(x);
        CAPTURE(x);
        CHECK(std::abs(w * std::exp(w) - x) <= 1e-12 * std::max(1.0, std::abs(x)));
    }
    CHECK(error_code_of([] { lambertw(-0.4); }) == Errc::DomainError);
}

TEST_CASE("nonstandard law")
{
    CHECK(nonstd_quantile_tail(1.0) == 1.0);
    CHECK(nonstd_sf(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    for (double x : {0.5, 0.01, 1e-6}) {
        CHECK(nonstd_sf(nonstd_quantile_tail(x)) == doctest::Approx(x).epsilon(1e-10));
    }
    CHECK(error_code_of([] { nonstd_quantile_tail(0.0); }) == Errc::DomainError);
    CHECK(error_code_of([] { nonstd_sf(0.5); }) == Errc::DomainError);

    const double d3 = std::abs(nonstd_sf(2e3) / nonstd_sf(1e3) - std::pow(2.0, -5.0));
    const double d6 = std::abs(nonstd_sf(2e6) / nonstd_sf(1e6) - std::pow(2.0, -5.0));
    CHECK(d6 < d3);

    RngStream rng(4, streams::sample);
    const auto s = sample_nonstd(100, rng);
    CHECK(s.order_stat(s.size()) >= 1.0);
}
