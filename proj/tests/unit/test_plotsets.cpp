#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tailband/distributions.hpp"
#include "tailband/plotsets.hpp"
#include "test_support.hpp"

using namespace tailband;
using tb_test::error_code_of;

namespace {

OrderedSample pareto_grid(double xi, std::size_t n)
{
    std::vector<double> v(n);
    for (std::size_t j = 1; j <= n; ++j) {
        v[j - 1] = std::pow(static_cast<double>(j) / static_cast<double>(n), -xi);
    }
    return OrderedSample(std::move(v));
}

}  // namespace

TEST_CASE("QQ set of a small sample")
{
    const OrderedSample s({8, 4, 2, 1});
    const auto p = qq_set(s, {2, 0.01, 0.05});
    REQUIRE(p.points.size() == 2);
    CHECK(p.points[0] == Point{0.0, 0.0});
    CHECK(p.points[1].x == doctest::Approx(std::log(2.0)));
    CHECK(p.points[1].y == doctest::Approx(std::log(2.0)));
    CHECK(p.normalizers.at("X(k)") == 4.0);
    CHECK(p.indices == std::vector<std::size_t>{2, 1});
}

TEST_CASE("QQ set of exact Pareto quantiles lies on y = xi x")
{
    const auto s = pareto_grid(0.3, 5000);
    const auto p = qq_set(s, {400, 0.05, 0.05});
    for (const auto& pt : p.points) {
        CHECK(std::abs(pt.y - 0.3 * pt.x) <= 1e-13 * std::max(1.0, pt.x));
    }
    CHECK(p.points.front() == Point{0.0, 0.0});

    const auto t = qq_set(s, {400, 0.05, 0.05}, true);
    CHECK(t.indices.back() == 20);
    CHECK(t.points.size() == 381);
    for (std::size_t i = 1; i < t.points.size(); ++i) {
        CHECK(t.points[i].x > t.points[i - 1].x);
    }

    const auto z = qq_normalized_set(s, {400, 0.05, 0.05}, fixed_xi(0.3, 400));
    for (const auto& pt : z.points) {
        CHECK(std::abs(pt.y - 0.3 * pt.x) <= 1e-11 * std::max(1.0, pt.x));
    }
}

TEST_CASE("QQ and ME sets are scale invariant")
{
    RngStream rng(12, streams::sample);
    const auto s = sample_pareto(0.4, 2000, rng);
    const auto c = s.affine(37.5, 0.0);
    const PlotConfig cfg{150, 0.05, 0.05};
    const auto a = qq_set(s, cfg);
    const auto b = qq_set(c, cfg);
    const auto m1 = me_set(s, cfg);
    const auto m2 = me_set(c, cfg);
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        CHECK(b.points[i].y == doctest::Approx(a.points[i].y).epsilon(1e-12));
    }
    for (std::size_t i = 0; i < m1.points.size(); ++i) {
        CHECK(m2.points[i].x == doctest::Approx(m1.points[i].x).epsilon(1e-12));
        CHECK(m2.points[i].y == doctest::Approx(m1.points[i].y).epsilon(1e-12));
    }
}

TEST_CASE("QQ set needs positive X(k)")
{
    CHECK(error_code_of([] { qq_set(OrderedSample({3, 2, -1, -2}), {3, 0.1, 0.05}); }) ==
          Errc::NonPositiveOrderStatistic);
    CHECK(error_code_of([] { qq_set(OrderedSample({3, 2, 1}), {3, 0.1, 0.05}); }) == Errc::BadK);
}

TEST_CASE("ME set of a small sample")
{
    const OrderedSample s({4, 3, 2, 1});
    const auto p = me_set(s, {3, 0.01, 0.05});
    REQUIRE(p.points.size() == 2);
    CHECK(p.points[0].x == doctest::Approx(1.5));
    CHECK(p.points[0].y == doctest::Approx(0.5));
    CHECK(p.points[1].x == doctest::Approx(1.0));
    CHECK(p.points[1].y == doctest::Approx(0.75));
}

TEST_CASE("ME set abscissas")
{
    RngStream rng(13, streams::sample);
    const auto s = sample_gpd({0.3, 1.0}, 5000, rng);
    const auto p = me_set(s, {500, 0.05, 0.05});
    CHECK(p.points.back().x == 1.0);
    for (std::size_t i = 1; i < p.points.size(); ++i) {
        CHECK(p.points[i].x <= p.points[i - 1].x);
        CHECK(p.points[i].x >= 1.0);
    }
    CHECK(me_set(s, {500, 0.05, 0.05}, true).indices.front() == 25);
}

TEST_CASE("normalized ME sets")
{
    const auto s = pareto_grid(0.25, 20000);
    const PlotConfig cfg{1000, 0.05, 0.05};
    const auto p = me_normalized_set(s, cfg, fixed_xi(0.25, 1000), MeRegime::LtHalf);
    for (std::size_t i = 0; i < p.points.size(); ++i) {
        const double t = static_cast<double>(p.indices[i]) / 1000.0;
        CHECK(p.points[i].x == doctest::Approx(std::pow(t, -0.25)).epsilon(1e-10));
    }
    CHECK(error_code_of([&] { me_normalized_set(s, cfg, fixed_xi(0.25, 1000), MeRegime::GtHalf); }) ==
          Errc::RegimeMismatch);
    CHECK(error_code_of([&] { me_normalized_set(s, cfg, fixed_xi(1.5, 1000), MeRegime::GtOne); }) ==
          Errc::MissingQuantileFunction);

    const auto heavy = pareto_grid(1.5, 20000);
    const QuantileFunction b = [](double n) { return std::pow(n, 1.5); };
    const auto g = me_normalized_set(heavy, cfg, fixed_xi(1.5, 1000), MeRegime::GtOne, b);
    CHECK(g.kind == PlotKind::MeNormalizedGtOne);
    CHECK(g.normalizers.at("b(n)") == doctest::Approx(std::pow(20000.0, 1.5)));

    const auto h = pareto_grid(2.0 / 3.0, 20000);
    const auto m = me_normalized_set(h, cfg, fixed_xi(2.0 / 3.0, 1000), MeRegime::GtHalf);
    CHECK(m.normalizers.at("X(1)") == h.order_stat(1));
}

TEST_CASE("Pareto ME plot approaches the line y = x/3")
{
    RngStream rng(21, streams::sample);
    const auto s = sample_pareto(0.25, 100000, rng);
    const auto p = me_set(s, {3000, 0.05, 0.05}, true);
    double worst = 0.0;
    for (const auto& pt : p.points) {
        worst = std::max(worst, std::abs(pt.y - pt.x / 3.0));
    }
    CHECK(worst < 0.15);
    CHECK(hausdorff_to_limit(p, {1.0 / 3.0, 1.0, std::pow(0.05, -0.25)}) < 0.1);
}

TEST_CASE("GPD ME plot follows the finite-threshold mean excess")
{
    RngStream rng(22, streams::sample);
    const auto s = sample_gpd({0.25, 1.0}, 100000, rng);
    const auto p = me_set(s, {3000, 0.05, 0.05}, true);
    const double xk = p.normalizers.at("X(k)");
    double worst = 0.0;
    for (const auto& pt : p.points) {
        worst = std::max(worst, std::abs(pt.y - (pt.x / 3.0 + 4.0 / (3.0 * xk))));
    }
    CHECK(worst < 0.15);
}

TEST_CASE("Hausdorff distance to the limit segment")
{
    PlotSet on;
    for (int i = 0; i <= 1000; ++i) {
        const double x = i / 100.0;
        on.points.push_back({x, 0.5 * x});
    }
    const LimitSet line{0.5, 0.0, 10.0};
    // Points 0.01 apart: segment nodes are within half a spacing of a point.
    CHECK(hausdorff_to_limit(on, line) <= 0.005 * std::hypot(1.0, 0.5) + 1e-12);

    PlotSet off = on;
    const double d = 0.4;
    const double nx = -0.5 / std::hypot(1.0, 0.5);
    const double ny = 1.0 / std::hypot(1.0, 0.5);
    off.points.push_back({5.0 + d * nx, 2.5 + d * ny});
    CHECK(hausdorff_to_limit(off, line) == doctest::Approx(d).epsilon(1e-9));

    CHECK(error_code_of([&] { hausdorff_to_limit(on, {0.5, 1.0, 10.0}); }) == Errc::WindowMismatch);
}

TEST_CASE("Hausdorff distance is insensitive to which side is discretized")
{
    RngStream rng(31, streams::sample);
    const auto s = sample_pareto(0.25, 10000, rng);
    const auto p = qq_set(s, {400, 0.05, 0.05}, true);
    double lo = p.points.front().x;
    double hi = p.points.back().x;
    const double h = hausdorff_to_limit(p, {0.25, lo, hi});

    // Points against a 1001-node discretization instead of the exact segment.
    double to_nodes = 0.0;
    for (const auto& pt : p.points) {
        double best = 1e300;
        for (int i = 0; i <= 1000; ++i) {
            const double x = lo + (hi - lo) * i / 1000.0;
            best = std::min(best, std::hypot(pt.x - x, pt.y - 0.25 * x));
        }
        to_nodes = std::max(to_nodes, best);
    }
    double to_segment = 0.0;
    for (const auto& pt : p.points) {
        const double u = std::clamp(((pt.x - lo) + 0.25 * (pt.y - 0.25 * lo)) / ((hi - lo) * (1 + 0.0625)), 0.0, 1.0);
        const double x = lo + u * (hi - lo);
        to_segment = std::max(to_segment, std::hypot(pt.x - x, pt.y - 0.25 * x));
    }
    const double spacing = (hi - lo) * std::hypot(1.0, 0.25) / 1000.0;
    CHECK(std::abs(to_nodes - to_segment) <= spacing);
    CHECK(h >= to_segment - 1e-15);
    CHECK(h <= std::max(to_segment, spacing + to_segment) + spacing);
}

TEST_CASE("Hill plot")
{
    const double e = std::numbers::e;
    const auto p = hill_plot(OrderedSample({e * e * e, e * e, e, 1.0}), 3);
    REQUIRE(p.points.size() == 3);
    CHECK(p.points[0].y == doctest::Approx(1.0));
    CHECK(p.points[1].y == doctest::Approx(1.5));
    CHECK(p.points[2].y == doctest::Approx(2.0));
    CHECK(hill_plot(OrderedSample({e * e * e, e * e, e, 1.0}), 1).points.size() == 1);
    CHECK(error_code_of([] { hill_plot(OrderedSample({3, 2, 0, -1}), 3); }) == Errc::NonPositiveOrderStatistic);

    RngStream rng(9, streams::sample);
    const auto s = sample_pareto(0.5, 400, rng);
    const auto hp = hill_plot(s, 50);
    for (std::size_t k = 1; k <= 50; ++k) {
        CHECK(hp.points[k - 1].y == doctest::Approx(hill_estimate(s, k).xi).epsilon(1e-12));
    }
}
