#include "doctest.h"

#include <cmath>
#include <numbers>

#include "tailband/data.hpp"
#include "tailband/distributions.hpp"
#include "test_support.hpp"

using namespace tailband;
using tb_test::error_code_of;
using tb_test::write_temp;

namespace {

std::vector<double> as_vector(const OrderedSample& s)
{
    return {s.values().begin(), s.values().end()};
}

}  // namespace

TEST_CASE("ingest sorts descending and keeps ties")
{
    CHECK(as_vector(ingest(write_temp("a.txt", "3\n1\n2\n"))) == std::vector<double>{3, 2, 1});
    const auto s = ingest(write_temp("b.txt", "# hdr\n5\n5\n"));
    CHECK(as_vector(s) == std::vector<double>{5, 5});
    CHECK(s.size() == 2);
}

TEST_CASE("ingest reports the offending line")
{
    try {
        ingest(write_temp("c.txt", "1\nNaN\n2\n"));
        FAIL("expected NonFiniteValue");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NonFiniteValue);
        CHECK(e.line() == 2);
    }
    try {
        ingest(write_temp("d.txt", "1\n\n# c\nabc\n"));
        FAIL("expected ParseError");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ParseError);
        CHECK(e.line() == 4);
    }
    CHECK(error_code_of([] { ingest("/nonexistent/file.txt"); }) == Errc::FileNotFound);
    CHECK(error_code_of([] { ingest(write_temp("e.txt", "# only\n7\n")); }) == Errc::TooFewObservations);
    CHECK(error_code_of([] { ingest(write_temp("f.txt", "1\n-inf\n")); }) == Errc::NonFiniteValue);
}

TEST_CASE("ingest accepts scientific notation and csv columns")
{
    CHECK(as_vector(ingest(write_temp("g.txt", "1e3\n+2.5\n-4E-1\n"))) == std::vector<double>{1000, 2.5, -0.4});
    const auto path = write_temp("h.csv", "id,value\n1,3.5\n2,7\n3,-1\n");
    CHECK(as_vector(ingest(path, InputFormat::CsvColumn, 1)) == std::vector<double>{7, 3.5, -1});
    CHECK(error_code_of([&] { ingest(path, InputFormat::CsvColumn, 4); }) == Errc::ParseError);
}

TEST_CASE("ingest . serialize . ingest is the identity")
{
    RngStream rng(7, streams::sample);
    const auto s = sample_pareto(0.7, 500, rng);
    const auto again = parse_sample(serialize(s));
    CHECK(as_vector(again) == as_vector(s));
    CHECK(serialize(again) == serialize(s));
}

TEST_CASE("empirical mean excess")
{
    const OrderedSample s({4, 3, 2, 1});
    CHECK(empirical_me(s, 2.0) == doctest::Approx(1.5));
    CHECK(error_code_of([&] { empirical_me(s, 4.0); }) == Errc::EmptyExceedanceSet);

    const OrderedSample c({2.5, 2.5, 2.5, 2.5});
    CHECK(empirical_me(c, 1.0) == doctest::Approx(1.5));

    RngStream rng(3, streams::sample);
    const auto x = sample_gpd({0.2, 1.0}, 2000, rng);
    for (double shift : {-3.0, 0.5, 100.0}) {
        const auto y = x.affine(1.0, shift);
        for (double u : {0.1, 1.0, 3.0}) {
            CHECK(empirical_me(y, u + shift) == doctest::Approx(empirical_me(x, u)).epsilon(1e-9));
        }
    }
}

TEST_CASE("mean excess at order statistics matches the direct definition")
{
    const OrderedSample s({9, 7, 7, 4, 4, 4, 1});
    const auto me = empirical_me_at_order_stats(s);
    CHECK(std::isnan(me[0]));
    for (std::size_t i = 2; i <= s.size(); ++i) {
        CHECK(me[i - 1] == doctest::Approx(empirical_me(s, s.order_stat(i))));
    }
}

TEST_CASE("Hill estimator")
{
    const double e = std::numbers::e;
    const OrderedSample s({e * e * e, e * e, e, 1.0});
    const auto h = hill_estimate(s, 3);
    CHECK(h.xi == doctest::Approx(2.0));
    CHECK(h.method == TailIndexEstimate::Method::Hill);
    CHECK(h.k == 3);
    CHECK(error_code_of([&] { hill_estimate(s, 4); }) == Errc::BadK);
    CHECK(error_code_of([&] { hill_estimate(s, 0); }) == Errc::BadK);
    CHECK(error_code_of([] { hill_estimate(OrderedSample({3, 2, 0, -1}), 2); }) ==
          Errc::NonPositiveOrderStatistic);

    RngStream rng(11, streams::sample);
    const auto x = sample_pareto(0.4, 3000, rng);
    for (double c : {1e-3, 2.0, 1e6}) {
        CHECK(hill_estimate(x.affine(c, 0.0), 200).xi == doctest::Approx(hill_estimate(x, 200).xi).epsilon(1e-12));
    }
}

TEST_CASE("Hill on a Pareto(0.25) sample")
{
    RngStream rng(2024, streams::sample);
    const auto x = sample_pareto(0.25, 50000, rng);
    CHECK(std::abs(hill_estimate(x, 1000).xi - 0.25) <= 0.03);
}

TEST_CASE("Hill error shrinks on exact Pareto quantile grids")
{
    auto err = [](std::size_t n) {
        std::vector<double> v(n);
        for (std::size_t j = 1; j <= n; ++j) {
            v[j - 1] = std::pow(static_cast<double>(j) / static_cast<double>(n + 1), -0.5);
        }
        const auto k = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
        return std::abs(hill_estimate(OrderedSample(std::move(v)), k).xi - 0.5);
    };
    const double e4 = err(10000);
    const double e6 = err(1000000);
    CHECK(e6 < e4);
    CHECK(e6 < 0.01);
}

TEST_CASE("Pickands estimator")
{
    // X(k) - X(2k) = X(2k) - X(4k) with k = 1.
    CHECK(pickands_estimate(OrderedSample({10, 7, 6, 4}), 1).xi == doctest::Approx(0.0));
    CHECK(pickands_estimate(OrderedSample({10, 7, 6, 4}), 1).non_positive);

    // Exact quantiles (j/n)^{-1/2}: the spacing ratio is 2^{1/2} for every k.
    const std::size_t n = 1024;
    std::vector<double> v(n);
    for (std::size_t j = 1; j <= n; ++j) {
        v[j - 1] = std::pow(static_cast<double>(j) / static_cast<double>(n), -0.5);
    }
    const OrderedSample q(v);
    const double x64 = std::sqrt(1024.0 / 64), x128 = std::sqrt(1024.0 / 128), x256 = std::sqrt(1024.0 / 256);
    const double oracle = std::log((x64 - x128) / (x128 - x256)) / std::log(2.0);
    CHECK(oracle == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(pickands_estimate(q, 64).xi == doctest::Approx(oracle).epsilon(1e-12));

    CHECK(error_code_of([] { pickands_estimate(OrderedSample({1, 1, 1, 1, 1, 1, 1, 1}), 2); }) ==
          Errc::DegenerateSpacings);
    CHECK(error_code_of([&] { pickands_estimate(q, 257); }) == Errc::BadK);

    RngStream rng(5, streams::sample);
    const auto x = sample_pareto(0.3, 4000, rng);
    const double base = pickands_estimate(x, 100).xi;
    CHECK(pickands_estimate(x.affine(3.5, -20.0), 100).xi == doctest::Approx(base).epsilon(1e-9));
}
