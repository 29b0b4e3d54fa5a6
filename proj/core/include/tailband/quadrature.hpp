#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <queue>
#include <vector>

namespace tailband {

template <class T>
struct QuadratureResult {
    T value{};
    double error = 0.0;
    bool converged = false;
    int evaluations = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
inline constexpr std::array<double, 8> kronrod_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T, class F>
QuadratureResult<T> gk15(F& f, double a, double b)
{
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const T fc = f(c);
    T kronrod = fc * kronrod_weights[7];
    T gauss = fc * gauss_weights[3];
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kronrod_nodes[i];
        const T f1 = f(c - dx);
        const T f2 = f(c + dx);
        kronrod += (f1 + f2) * kronrod_weights[i];
        if (i % 2 == 1) {
            gauss += (f1 + f2) * gauss_weights[i / 2];
        }
    }
    QuadratureResult<T> r;
    r.value = kronrod * h;
    r.error = std::abs((kronrod - gauss) * h);
    r.evaluations = 15;
    return r;
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (G7/K15) quadrature of f over [a, b].
/// Works for real and complex integrands. The interval with the largest
/// error estimate is bisected until the summed estimate is below
/// max(abs_tol, rel_tol * |integral|) or `max_intervals` is reached.
template <class T = double, class F>
QuadratureResult<T> integrate(F&& f, double a, double b, double rel_tol = 1e-10,
                              double abs_tol = 1e-14, int max_intervals = 2000)
{
    struct Piece {
        double a;
        double b;
        QuadratureResult<T> r;
        bool operator<(const Piece& other) const { return r.error < other.r.error; }
    };

    std::priority_queue<Piece> heap;
    auto first = detail::gk15<T>(f, a, b);
    T total = first.value;
    double error = first.error;
    int evaluations = first.evaluations;
    heap.push({a, b, first});

    while (error > std::max(abs_tol, rel_tol * std::abs(total)) &&
           static_cast<int>(heap.size()) < max_intervals) {
        Piece worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            heap.push(worst);
            break;
        }
        auto left = detail::gk15<T>(f, worst.a, mid);
        auto right = detail::gk15<T>(f, mid, worst.b);
        evaluations += left.evaluations + right.evaluations;
        total += left.value + right.value - worst.r.value;
        error += left.error + right.error - worst.r.error;
        heap.push({worst.a, mid, left});
        heap.push({mid, worst.b, right});
    }

    // Re-sum to shed the drift of the running updates.
    QuadratureResult<T> out;
    out.value = T{};
    out.error = 0.0;
    while (!heap.empty()) {
        out.value += heap.top().r.value;
        out.error += heap.top().r.error;
        heap.pop();
    }
    out.evaluations = evaluations;
    out.converged = out.error <= std::max(abs_tol, rel_tol * std::abs(out.value));
    return out;
}

}  // namespace tailband
