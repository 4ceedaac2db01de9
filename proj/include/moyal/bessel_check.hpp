#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "moyal/numerics/bessel.hpp"
#include "moyal/numerics/radial.hpp"
#include "moyal/oneloop.hpp"
#include "moyal/verify.hpp"

namespace moyal {

/// Parameter point of a master-integral comparison.
struct MasterPoint {
    int D = 4;
    int N = 1;
    double m = 1.0;
    double r = 1.0;
};

/**
 * Random master-integral points with m in [0.2, 2] and |p~| in [0.05, 3].
 * Tensor points with N = 1 in D = 4 are redrawn: their radial integrand does
 * not decay fast enough for the Hankel oracle.
 */
inline std::vector<MasterPoint> random_master_points(std::uint64_t seed, int count, bool tensor)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dpick(0, 1), npick(1, 3);
    std::uniform_real_distribution<double> mpick(0.2, 2.0), lrpick(std::log(0.05), std::log(3.0));
    std::vector<MasterPoint> out;
    while (static_cast<int>(out.size()) < count) {
        MasterPoint p{dpick(rng) == 0 ? 2 : 4, npick(rng), mpick(rng), std::exp(lrpick(rng))};
        if (tensor && p.D == 4 && p.N == 1) continue;
        out.push_back(p);
    }
    return out;
}

inline double relative_error(double got, double want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

/// Bessel-K accuracy, the small-argument law and both master integrals against the radial oracles.
inline std::vector<CheckResult> run_bessel_check(std::uint64_t seed = 1, int points = 20)
{
    VerifyOptions o;
    o.seed = seed;
    detail::CheckRecorder rec("bessel", o);

    double k_err = 0.0, wronskian = 0.0;
    int k_samples = 0;
    for (int n = 0; n <= 4; ++n)
        for (double lz = -3.0; lz <= 1.7; lz += 0.1) {
            const double z = std::pow(10.0, lz);
            k_err = std::max(k_err, relative_error(numerics::bessel_k(n, z), std::cyl_bessel_k(n, z)));
            const double w = numerics::bessel_i(n, z) * numerics::bessel_k(n + 1, z) +
                             numerics::bessel_i(n + 1, z) * numerics::bessel_k(n, z);
            wronskian = std::max(wronskian, relative_error(w * z, 1.0));
            ++k_samples;
        }
    rec.add("K_n(z) against std::cyl_bessel_k, n <= 4, z in [1e-3, 50]", k_err, 1e-12, k_samples);
    rec.add("Wronskian I_n K_(n+1) + I_(n+1) K_n = 1/z", wronskian, 1e-12, k_samples);

    for (int Q : {1, 2}) {
        const double r = 1e-3;
        const double got = oneloop::bessel_m(-Q, 1.0, r);
        rec.add("M_(-" + std::to_string(Q) + ") small-argument law at |p~| = 1e-3",
                relative_error(got, oneloop::bessel_m_asymptotic(Q, r)), 1e-2);
    }

    double scalar = 0.0;
    for (const auto& p : random_master_points(seed, points, false))
        scalar = std::max(scalar, relative_error(oneloop::master_J_value(p.N, p.D, p.m, p.r),
                                                 numerics::radial_master_J(p.D, p.N, p.m, p.r)));
    rec.add("J_N closed form against the radial integral", scalar, 1e-5, points);

    double tensor = 0.0;
    for (const auto& p : random_master_points(seed + 1, points, true)) {
        const auto cf = oneloop::master_J_tensor_value(p.N, p.D, p.m, p.r);
        const auto rad = numerics::radial_master_J_tensor(p.D, p.N, p.m, p.r);
        tensor = std::max({tensor, relative_error(cf.delta, rad.delta), relative_error(cf.pp, rad.pp)});
    }
    rec.add("J_(N, mu nu) closed form against the radial integral", tensor, 1e-5, points);
    return rec.take();
}

}  // namespace moyal
