#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

#include "moyal/error.hpp"

namespace moyal::numerics {

struct QuadratureResult {
    std::vector<double> value;
    /// Estimated absolute error (max over components).
    double abs_error = 0.0;
    int intervals = 0;
    bool converged = false;
};

namespace detail {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    std::vector<double> value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gk15(const F& f, double a, double b)
{
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    std::vector<double> fc = f(c);
    const std::size_t n = fc.size();
    std::vector<double> kron(n), gauss(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        kron[i] = fc[i] * kWgk[7];
        gauss[i] = fc[i] * kWg[3];
    }
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[static_cast<std::size_t>(j)];
        const std::vector<double> f1 = f(c - dx);
        const std::vector<double> f2 = f(c + dx);
        if (f1.size() != n || f2.size() != n) throw DomainError("integrand changed its dimension");
        for (std::size_t i = 0; i < n; ++i) {
            const double s = f1[i] + f2[i];
            kron[i] += kWgk[static_cast<std::size_t>(j)] * s;
            if (j % 2 == 1) gauss[i] += kWg[static_cast<std::size_t>(j / 2)] * s;
        }
    }
    Panel p{a, b, std::vector<double>(n), 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        p.value[i] = kron[i] * h;
        p.error = std::max(p.error, std::abs((kron[i] - gauss[i]) * h));
    }
    return p;
}

}  // namespace detail

/**
 * Globally adaptive Gauss-Kronrod (7/15) quadrature of a vector-valued
 * integrand on [a, b]. The panel with the largest error estimate is bisected
 * until the summed estimate drops below max(abs_tol, rel_tol * |value|).
 * Node placement depends only on the integrand values, so results are
 * reproducible bit for bit.
 */
template <class F>
QuadratureResult integrate(const F& f, double a, double b, double abs_tol, double rel_tol = 0.0,
                           int max_intervals = 4000)
{
    if (!(b > a)) throw DomainError("integration interval must have b > a");
    std::priority_queue<detail::Panel> heap;
    heap.push(detail::gk15(f, a, b));
    const std::size_t n = heap.top().value.size();

    const auto totals = [&](const std::priority_queue<detail::Panel>& h, std::vector<double>& val, double& err) {
        auto copy = h;
        val.assign(n, 0.0);
        err = 0.0;
        std::vector<detail::Panel> panels;
        while (!copy.empty()) {
            panels.push_back(copy.top());
            copy.pop();
        }
        // Sum in interval order so the result does not depend on heap layout.
        std::sort(panels.begin(), panels.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
        for (const auto& p : panels) {
            for (std::size_t i = 0; i < n; ++i) val[i] += p.value[i];
            err += p.error;
        }
    };

    QuadratureResult out;
    double err_sum = heap.top().error;
    std::vector<double> val = heap.top().value;
    int count = 1;
    while (true) {
        double vmax = 0.0;
        for (double v : val) vmax = std::max(vmax, std::abs(v));
        if (err_sum <= std::max(abs_tol, rel_tol * vmax)) {
            out.converged = true;
            break;
        }
        if (count >= max_intervals) break;
        detail::Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            heap.push(std::move(worst));
            break;
        }
        detail::Panel left = detail::gk15(f, worst.a, mid);
        detail::Panel right = detail::gk15(f, mid, worst.b);
        err_sum += left.error + right.error - worst.error;
        for (std::size_t i = 0; i < n; ++i) val[i] += left.value[i] + right.value[i] - worst.value[i];
        heap.push(std::move(left));
        heap.push(std::move(right));
        ++count;
    }
    totals(heap, out.value, out.abs_error);
    out.intervals = count;
    return out;
}

/// Scalar convenience wrapper.
template <class F>
double integrate_scalar(const F& f, double a, double b, double abs_tol, double rel_tol = 0.0,
                        double* abs_error = nullptr)
{
    auto res = integrate([&](double x) { return std::vector<double>{f(x)}; }, a, b, abs_tol, rel_tol);
    if (abs_error) *abs_error = res.abs_error;
    return res.value[0];
}

/**
 * Wynn's epsilon algorithm applied to a sequence of partial sums. Returns the
 * last accelerated estimate; `error` receives the difference between the two
 * most recent estimates on the highest even column reached.
 */
inline double wynn_epsilon(const std::vector<double>& partial_sums, double* error = nullptr)
{
    const std::size_t n = partial_sums.size();
    if (n == 0) throw DomainError("wynn_epsilon needs at least one partial sum");
    if (n < 3) {
        if (error) *error = n == 2 ? std::abs(partial_sums[1] - partial_sums[0]) : INFINITY;
        return partial_sums.back();
    }
    // eps[k][j]: column k of the table built from sums j..; even columns are estimates.
    std::vector<std::vector<double>> eps(n + 1);
    eps[0].assign(n + 1, 0.0);
    eps[1] = partial_sums;
    double best = partial_sums.back();
    double best_err = std::abs(partial_sums[n - 1] - partial_sums[n - 2]);
    for (std::size_t k = 2; k <= n; ++k) {
        const std::size_t len = n - k + 1;
        eps[k].assign(len, 0.0);
        bool broken = false;
        for (std::size_t j = 0; j < len; ++j) {
            const double diff = eps[k - 1][j + 1] - eps[k - 1][j];
            if (diff == 0.0 || !std::isfinite(diff)) {
                broken = true;
                break;
            }
            eps[k][j] = eps[k - 2][j + 1] + 1.0 / diff;
        }
        if (broken) break;
        if (k % 2 == 1 && len >= 2) {
            const double est = eps[k][len - 1];
            const double e = std::abs(eps[k][len - 1] - eps[k][len - 2]);
            if (e < best_err) {
                best = est;
                best_err = e;
            }
        }
    }
    if (error) *error = best_err;
    return best;
}

}  // namespace moyal::numerics
