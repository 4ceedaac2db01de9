#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "moyal/error.hpp"
#include "moyal/numerics/quadrature.hpp"

namespace moyal::numerics {

/**
 * Independent quadrature evaluations of
 *   J_N(r)       = int d^Dk/(2pi)^D e^{i k.p} / (k^2 + m^2)^N,         r = |p|
 *   J_{N,mu nu}  = int d^Dk/(2pi)^D k_mu k_nu e^{i k.p} / (k^2 + m^2)^N
 * that do not touch the Bessel-K code path. The tensor is returned as its
 * two invariant coefficients: J_{N,mu nu} = delta * t.delta + p_mu p_nu * t.pp.
 */
struct TensorCoefficients {
    double delta = 0.0;
    double pp = 0.0;
};

namespace detail {

/// int_0^inf k^{D-1+extra} f(k) (k r)^{-order} J_order(k r) dk by half-period panels and Wynn's epsilon.
inline double radial_hankel(int D, int N, double m, double r, int order, int extra, double rel_tol)
{
    const double nu = static_cast<double>(order);
    const auto h = [&](double k) {
        if (k == 0.0) return 0.0;
        const double u = k * r;
        const double kernel = std::cyl_bessel_j(nu, u) / std::pow(u, nu);
        return std::pow(k, D - 1 + extra) * kernel / std::pow(k * k + m * m, N);
    };
    // Panel ends near the zeros of J_order (McMahon), so partial sums alternate.
    const auto zero = [&](int s) {
        return (static_cast<double>(s) + 0.5 * nu - 0.25) * std::numbers::pi / r;
    };
    std::vector<double> sums;
    double total = 0.0;
    double lo = 0.0;
    double prev_est = 0.0;
    double est = 0.0;
    int stable = 0;
    for (int s = 1; s <= 400; ++s) {
        const double hi = zero(s);
        double piece = integrate_scalar(h, lo, hi, 0.0, 1e-13);
        total += piece;
        sums.push_back(total);
        lo = hi;
        if (s >= 8) {
            double err = 0.0;
            const std::vector<double> tail(sums.end() - std::min<std::ptrdiff_t>(40, static_cast<std::ptrdiff_t>(sums.size())), sums.end());
            est = wynn_epsilon(tail, &err);
            if (std::abs(est - prev_est) <= rel_tol * std::abs(est) && err <= 10.0 * rel_tol * std::abs(est)) {
                if (++stable >= 3) return est;
            } else {
                stable = 0;
            }
            prev_est = est;
        }
    }
    return est;
}

inline double norm_factor(int D) { return std::pow(2.0 * std::numbers::pi, -0.5 * D); }

inline void check(int D, int N, double m, double r)
{
    if (D < 2 || D % 2 != 0) throw DomainError("dimension must be even and positive");
    if (N < 1) throw DomainError("N must be at least 1");
    if (!(r > 0.0)) throw DomainError("|p~| must be positive");
    if (m < 0.0) throw DomainError("mass must be non-negative");
}

}  // namespace detail

/// J_N by the Hankel-transform radial integral.
inline double radial_master_J(int D, int N, double m, double r, double rel_tol = 1e-9)
{
    detail::check(D, N, m, r);
    const int nu = D / 2 - 1;
    // r^{1-D/2} int k^{D/2} J_nu(k r) f dk = int k^{D-1} (k r)^{-nu} J_nu(k r) f dk.
    return detail::norm_factor(D) * detail::radial_hankel(D, N, m, r, nu, 0, rel_tol);
}

/**
 * J_{N,mu nu} from minus the Hessian of the radial function F(r) = J_N(r):
 * delta coefficient -F'/r, and F'' - F'/r = r^2 * (pp coefficient).
 */
inline TensorCoefficients radial_master_J_tensor(int D, int N, double m, double r, double rel_tol = 1e-9)
{
    detail::check(D, N, m, r);
    const int nu = D / 2 - 1;
    const double c = detail::norm_factor(D);
    const double fp_over_r = -c * detail::radial_hankel(D, N, m, r, nu + 1, 2, rel_tol);
    const double fpp_minus = c * r * r * detail::radial_hankel(D, N, m, r, nu + 2, 4, rel_tol);
    return {-fp_over_r, -fpp_minus / (r * r)};
}

/**
 * Schwinger proper-time representation
 *   J_N = 1/Gamma(N) int_0^inf t^{N-1} (4 pi t)^{-D/2} exp(-t m^2 - r^2/(4t)) dt,
 * integrated over s = ln t. A second, absolutely convergent oracle.
 */
inline double schwinger_master_J(int D, int N, double m, double r, double rel_tol = 1e-11)
{
    detail::check(D, N, m, r);
    if (m == 0.0 && 2 * N >= D) throw DomainError("massless J_N needs N < D/2");
    const double g = std::tgamma(static_cast<double>(N));
    const auto f = [&](double s) {
        const double t = std::exp(s);
        const double e = -t * m * m - r * r / (4.0 * t);
        return std::pow(t, N) * std::pow(4.0 * std::numbers::pi * t, -0.5 * D) * std::exp(e) / g;
    };
    // The integrand is a smooth bump in s; integrate over a window that holds all of it.
    const double center = std::log(r * r / 4.0 + 1e-300);
    const double upper = m > 0.0 ? std::log(60.0 / (m * m) + std::exp(center) * 10.0) + 2.0 : center + 80.0;
    return integrate_scalar(f, center - 8.0, upper, 0.0, rel_tol);
}

inline TensorCoefficients schwinger_master_J_tensor(int D, int N, double m, double r, double rel_tol = 1e-11)
{
    detail::check(D, N, m, r);
    if (m == 0.0 && N >= 1 + D / 2) throw DomainError("massless J_{N,mu nu} needs N < 1 + D/2");
    const double g = std::tgamma(static_cast<double>(N));
    const auto f = [&](double s) {
        const double t = std::exp(s);
        const double e = -t * m * m - r * r / (4.0 * t);
        const double base = std::pow(t, N) * std::pow(4.0 * std::numbers::pi * t, -0.5 * D) * std::exp(e) / g;
        return std::vector<double>{base / (2.0 * t), -base / (4.0 * t * t)};
    };
    const double center = std::log(r * r / 4.0 + 1e-300);
    const double upper = m > 0.0 ? std::log(60.0 / (m * m) + std::exp(center) * 10.0) + 2.0 : center + 80.0;
    auto res = integrate(f, center - 8.0, upper, 0.0, rel_tol);
    return {res.value[0], res.value[1]};
}

}  // namespace moyal::numerics
