#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "moyal/error.hpp"

namespace moyal::numerics {

namespace detail {

inline constexpr double kEulerGamma = 0.57721566490153286061;

/// K_0 and K_1 by their ascending series; accurate for 0 < z <= 2.
inline void bessel_k01_series(double z, double& k0, double& k1)
{
    const double q = 0.25 * z * z;
    const double lg = std::log(0.5 * z);

    // K_0 = -(ln(z/2) + gamma) I_0 + sum_{k>=1} H_k q^k / (k!)^2
    // K_1 = 1/z + ln(z/2) I_1 - (z/4) sum_{k>=0} (psi(k+1) + psi(k+2)) q^k / (k! (k+1)!)
    double term0 = 1.0;       // q^k / (k!)^2
    double term1 = 1.0;       // q^k / (k! (k+1)!)
    double i0 = 1.0, i1 = 1.0;
    double harmonic = 0.0;    // H_k
    double s0 = 0.0;
    double s1 = (-kEulerGamma) + (1.0 - kEulerGamma);
    for (int k = 1; k < 200; ++k) {
        const double dk = static_cast<double>(k);
        term0 *= q / (dk * dk);
        term1 *= q / (dk * (dk + 1.0));
        harmonic += 1.0 / dk;
        i0 += term0;
        i1 += term1;
        const double a0 = harmonic * term0;
        const double a1 = (2.0 * (harmonic - kEulerGamma) + 1.0 / (dk + 1.0)) * term1;
        s0 += a0;
        s1 += a1;
        if (std::abs(a0) <= 1e-17 * std::abs(s0) && std::abs(a1) <= 1e-17 * std::abs(s1) &&
            term0 <= 1e-17 * i0)
            break;
    }
    i1 *= 0.5 * z;
    k0 = -(lg + kEulerGamma) * i0 + s0;
    k1 = 1.0 / z + lg * i1 - 0.25 * z * s1;
}

/// K_0 and K_1 by Steed's continued fraction (Temme's normalization), for z > 2.
inline void bessel_k01_cf(double z, double& k0, double& k1)
{
    constexpr double eps = 1e-16;
    constexpr int max_iter = 10000;
    double b = 2.0 * (1.0 + z);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25;
    double q = a1, c = a1, a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 1; i < max_iter; ++i) {
        const double di = static_cast<double>(i);
        a -= 2.0 * di;
        c = -a * c / (di + 1.0);
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < eps) break;
    }
    h *= a1;
    k0 = std::sqrt(std::numbers::pi / (2.0 * z)) * std::exp(-z) / s;
    k1 = k0 * (z + 0.5 - h) / z;
}

}  // namespace detail

/**
 * Modified Bessel function of the second kind K_n(z) for integer n and z > 0.
 * K_{-n} = K_n. Orders above 1 come from the upward recurrence
 * K_{n+1} = K_{n-1} + (2n/z) K_n, which is stable for K.
 */
inline double bessel_k(int n, double z)
{
    if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("bessel_k needs a positive finite argument");
    n = std::abs(n);
    double k0, k1;
    if (z <= 2.0)
        detail::bessel_k01_series(z, k0, k1);
    else
        detail::bessel_k01_cf(z, k0, k1);
    if (n == 0) return k0;
    for (int j = 1; j < n; ++j) {
        const double k2 = k0 + 2.0 * static_cast<double>(j) / z * k1;
        k0 = k1;
        k1 = k2;
    }
    return k1;
}

/// z^n K_n(z) for n >= 0; finite as z -> 0+ when n > 0 (limit 2^{n-1} (n-1)!).
inline double scaled_bessel_k(int n, double z)
{
    if (n < 0) throw DomainError("scaled_bessel_k needs n >= 0");
    if (z == 0.0) {
        if (n == 0) throw DomainError("K_0 diverges at zero");
        return std::ldexp(std::tgamma(static_cast<double>(n)), n - 1);
    }
    return std::pow(z, n) * bessel_k(n, z);
}

/// Modified Bessel function of the first kind I_n(z) by its power series (moderate z).
inline double bessel_i(int n, double z)
{
    n = std::abs(n);
    if (z < 0.0) throw DomainError("bessel_i is implemented for z >= 0");
    if (z == 0.0) return n == 0 ? 1.0 : 0.0;
    const double q = 0.25 * z * z;
    double term = std::pow(0.5 * z, n) / std::tgamma(static_cast<double>(n) + 1.0);
    double sum = term;
    for (int k = 1; k < 500; ++k) {
        term *= q / (static_cast<double>(k) * static_cast<double>(k + n));
        sum += term;
        if (term <= 1e-17 * sum) break;
    }
    return sum;
}

}  // namespace moyal::numerics
