#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "moyal/numerics/bessel.hpp"
#include "moyal/numerics/quadrature.hpp"
#include "moyal/symplectic.hpp"

namespace moyal::oneloop {

using Vec = std::vector<double>;

/// Parameters of the vacuum-polarization computation.
struct LoopConfig {
    int D = 4;
    double theta = 1.0;
    /// Number of Higgs fields; D(D+1)/2 when unset.
    std::optional<int> n_higgs;
    /// Higgs propagator mass.
    double mu = 1.0;

    int higgs_count() const { return n_higgs.value_or(D * (D + 1) / 2); }

    SymplecticStructure structure() const { return SymplecticStructure(D, theta); }

    void validate() const
    {
        (void)structure();
        if (D != 2 && D != 4) throw DomainError("one-loop evaluation supports D = 2 and D = 4");
        if (higgs_count() < 0) throw DomainError("number of Higgs fields must be non-negative");
        if (!(mu >= 0.0) || !std::isfinite(mu)) throw DomainError("Higgs mass must be non-negative");
    }
};

enum class LoopMethod { closed_form_bessel, quadrature_oracle, small_p_fit };

inline std::string to_string(LoopMethod m)
{
    switch (m) {
    case LoopMethod::closed_form_bessel: return "closed_form_bessel";
    case LoopMethod::quadrature_oracle: return "quadrature_oracle";
    case LoopMethod::small_p_fit: return "small_p_fit";
    }
    return "?";
}

/**
 * A scalar (dim = 0) or a D x D tensor (row-major) with an error estimate.
 * Fitted results also carry the fit residual.
 */
struct LoopResult {
    int dim = 0;
    std::vector<double> value;
    double abs_error = 0.0;
    LoopMethod method = LoopMethod::closed_form_bessel;
    double fit_residual = 0.0;

    double scalar() const
    {
        if (dim != 0) throw DomainError("result is a tensor");
        return value.at(0);
    }

    /// 1-based tensor access.
    double operator()(int mu, int nu) const
    {
        if (dim == 0) throw DomainError("result is a scalar");
        if (mu < 1 || mu > dim || nu < 1 || nu > dim) throw IndexError("tensor index out of range");
        return value[static_cast<std::size_t>((mu - 1) * dim + (nu - 1))];
    }
};

// ---------------------------------------------------------------------------
// Kinematics and vertices

inline double wedge(std::span<const double> p, std::span<const double> k, const SymplecticStructure& s)
{
    return s.wedge(p, k);
}

namespace detail {

inline Vec minus_sum(const SymplecticStructure& s, std::initializer_list<std::span<const double>> ks)
{
    Vec out(static_cast<std::size_t>(s.dimension()), 0.0);
    for (auto k : ks) {
        s.check_length(k.size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] -= k[i];
    }
    return out;
}

inline double delta(int a, int b) { return a == b ? 1.0 : 0.0; }

inline double comp(std::span<const double> v, int mu) { return v[static_cast<std::size_t>(mu - 1)]; }

inline double half_sin(const SymplecticStructure& s, std::span<const double> a, std::span<const double> b)
{
    return std::sin(0.5 * s.wedge(a, b));
}

inline void check_flavour(int a)
{
    if (a < 1) throw IndexError("Higgs flavour index must be at least 1");
}

}  // namespace detail

using Complex = std::complex<double>;

/// Three-gauge-boson vertex; k3 = -k1 - k2.
inline Complex vertex_3g(const SymplecticStructure& s, std::span<const double> k1, std::span<const double> k2,
                         int alpha, int beta, int gamma)
{
    for (int i : {alpha, beta, gamma}) s.check_index(i);
    const Vec k3 = detail::minus_sum(s, {k1, k2});
    using detail::comp, detail::delta;
    const double bracket = (comp(k2, gamma) - comp(k1, gamma)) * delta(alpha, beta) +
                           (comp(k1, beta) - comp(k3, beta)) * delta(alpha, gamma) +
                           (comp(k3, alpha) - comp(k2, alpha)) * delta(beta, gamma);
    return Complex(0.0, -2.0) * detail::half_sin(s, k1, k2) * bracket;
}

/// Four-gauge-boson vertex; k4 = -k1 - k2 - k3.
inline Complex vertex_4g(const SymplecticStructure& s, std::span<const double> k1, std::span<const double> k2,
                         std::span<const double> k3, int alpha, int beta, int gamma, int delta_)
{
    for (int i : {alpha, beta, gamma, delta_}) s.check_index(i);
    const Vec k4 = detail::minus_sum(s, {k1, k2, k3});
    using detail::delta;
    const double t1 = (delta(alpha, gamma) * delta(beta, delta_) - delta(alpha, delta_) * delta(beta, gamma)) *
                      detail::half_sin(s, k1, k2) * detail::half_sin(s, k3, k4);
    const double t2 = (delta(alpha, beta) * delta(gamma, delta_) - delta(alpha, gamma) * delta(beta, delta_)) *
                      detail::half_sin(s, k1, k4) * detail::half_sin(s, k2, k3);
    const double t3 = (delta(alpha, delta_) * delta(beta, gamma) - delta(alpha, beta) * delta(gamma, delta_)) *
                      detail::half_sin(s, k3, k1) * detail::half_sin(s, k2, k4);
    return -4.0 * (t1 + t2 + t3);
}

/// Gauge-boson/ghost vertex; k3 = -k1 - k2.
inline Complex vertex_ghost(const SymplecticStructure& s, std::span<const double> k1, std::span<const double> k2,
                            int mu)
{
    s.check_index(mu);
    const Vec k3 = detail::minus_sum(s, {k1, k2});
    return Complex(0.0, 2.0) * detail::comp(k1, mu) * detail::half_sin(s, k2, k3);
}

/// Gauge-boson/Higgs vertex (legs 1, 2 Higgs); k3 = -k1 - k2.
inline Complex vertex_gauge_higgs(const SymplecticStructure& s, std::span<const double> k1,
                                  std::span<const double> k2, int a, int b, int mu)
{
    s.check_index(mu);
    detail::check_flavour(a);
    detail::check_flavour(b);
    const Vec k3 = detail::minus_sum(s, {k1, k2});
    return Complex(0.0, 1.0) * detail::delta(a, b) * (detail::comp(k1, mu) - detail::comp(k2, mu)) *
           detail::half_sin(s, k2, k3);
}

/// Seagull vertex: legs 1, 2 are Higgs (a, b), legs 3, 4 gauge (alpha, beta); k4 = -k1 - k2 - k3.
inline Complex seagull(const SymplecticStructure& s, std::span<const double> k1, std::span<const double> k2,
                       std::span<const double> k3, int a, int b, int alpha, int beta)
{
    s.check_index(alpha);
    s.check_index(beta);
    detail::check_flavour(a);
    detail::check_flavour(b);
    const Vec k4 = detail::minus_sum(s, {k1, k2, k3});
    const double c = std::cos(0.5 * (s.wedge(k3, k1) + s.wedge(k4, k2))) -
                     std::cos(0.5 * s.wedge(k1, k2)) * std::cos(0.5 * s.wedge(k3, k4));
    return -2.0 * detail::delta(alpha, beta) * detail::delta(a, b) * c;
}

/// Caller-supplied structure constants C_{ab}^c, flattened as c[((a-1) n + (b-1)) n + (c-1)].
struct HiggsStructureConstants {
    int n = 0;
    std::vector<double> c;

    double operator()(int a, int b, int cc) const
    {
        if (a < 1 || b < 1 || cc < 1 || a > n || b > n || cc > n)
            throw IndexError("Higgs flavour index outside 1.." + std::to_string(n));
        return c.at(static_cast<std::size_t>(((a - 1) * n + (b - 1)) * n + (cc - 1)));
    }
};

/// Three-Higgs vertex; k3 = -k1 - k2 (it enters only through conservation).
inline Complex vertex_3h(const SymplecticStructure& s, std::span<const double> k1, std::span<const double> k2,
                         int a, int b, int c, const HiggsStructureConstants& C)
{
    s.check_length(k1.size());
    s.check_length(k2.size());
    return Complex(0.0, 1.0) * C(a, b, c) * detail::half_sin(s, k1, k2);
}

/// Four-Higgs vertex; k4 = -k1 - k2 - k3.
inline Complex vertex_4h(const SymplecticStructure& s, std::span<const double> k1, std::span<const double> k2,
                         std::span<const double> k3, int a, int b, int c, int d)
{
    for (int i : {a, b, c, d}) detail::check_flavour(i);
    const Vec k4 = detail::minus_sum(s, {k1, k2, k3});
    using detail::delta;
    const double t1 = (delta(a, c) * delta(b, d) - delta(a, d) * delta(b, c)) * detail::half_sin(s, k1, k2) *
                      detail::half_sin(s, k3, k4);
    const double t2 = (delta(a, b) * delta(c, d) - delta(a, c) * delta(b, d)) * detail::half_sin(s, k1, k4) *
                      detail::half_sin(s, k2, k3);
    const double t3 = (delta(a, d) * delta(b, c) - delta(a, b) * delta(c, d)) * detail::half_sin(s, k3, k1) *
                      detail::half_sin(s, k2, k4);
    return 4.0 * (t1 + t2 + t3);
}

// ---------------------------------------------------------------------------
// Integrands

namespace detail {

inline double dot(std::span<const double> a, std::span<const double> b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace detail

/**
 * The integrand of omega^i_{mu nu}(p) at loop momentum k: everything under
 * int d^Dk/(2 pi)^D, including the sin^2(p^k/2) factor. Returned row-major.
 */
inline std::vector<double> omega_integrand(int i, std::span<const double> k, std::span<const double> p,
                                           const LoopConfig& cfg)
{
    const SymplecticStructure s = cfg.structure();
    s.check_length(k.size());
    s.check_length(p.size());
    const int D = cfg.D;
    const auto n = static_cast<std::size_t>(D);
    const double N = static_cast<double>(cfg.higgs_count());
    const double sn = std::sin(0.5 * s.wedge(p, k));
    const double sin2 = sn * sn;
    const double k2 = detail::dot(k, k);
    Vec pk(n), km(n), k2p(n), p2k(n);
    for (std::size_t a = 0; a < n; ++a) {
        pk[a] = p[a] + k[a];
        km[a] = k[a] - p[a];
        k2p[a] = k[a] + 2.0 * p[a];
        p2k[a] = p[a] + 2.0 * k[a];
    }
    const double pk2 = detail::dot(pk, pk);
    const double mu2 = cfg.mu * cfg.mu;
    const double Dd = static_cast<double>(D);
    std::vector<double> out(n * n, 0.0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            const double del = a == b ? 1.0 : 0.0;
            double v = 0.0;
            switch (i) {
            case 1:
                v = 4.0 * sin2 / (k2 * pk2) *
                    ((detail::dot(km, km) + detail::dot(k2p, k2p)) * del + (Dd - 6.0) * p[a] * p[b] +
                     (p[a] * k[b] + k[a] * p[b]) * (2.0 * Dd - 3.0) + k[a] * k[b] * (4.0 * Dd - 6.0));
                break;
            case 2: v = 4.0 * sin2 / (k2 * pk2) * k[a] * k[b]; break;
            case 3: v = 8.0 * (Dd - 1.0) * del * sin2 / k2; break;
            case 4: v = 4.0 * N * sin2 / ((k2 + mu2) * (pk2 + mu2)) * p2k[a] * p2k[b]; break;
            case 5: v = -4.0 * N * del * sin2 / (k2 + mu2); break;
            default: throw DomainError("omega index must be in 1..5");
            }
            out[a * n + b] = v;
        }
    return out;
}

// ---------------------------------------------------------------------------
// Master integrals

/// a_{N,D} = 2^{-(D/2 + N - 1)} / (Gamma(N) pi^{D/2}).
inline double a_coefficient(int N, int D)
{
    return std::pow(2.0, -(0.5 * D + N - 1)) / (std::tgamma(static_cast<double>(N)) * std::pow(std::numbers::pi, 0.5 * D));
}

/**
 * M_Q(m r) = (m^2)^{-Q} (m r)^Q K_Q(m r), written as (r^2)^Q z^{-Q} K_|Q|(z)
 * with z = m r so that the massless limit of negative orders is exact:
 * M_{-q} -> 2^{q-1} Gamma(q) / r^{2q}.
 */
inline double bessel_m(int Q, double m, double r)
{
    if (!(r > 0.0)) throw DomainError("|p~| must be positive");
    if (m < 0.0) throw DomainError("mass must be non-negative");
    const double z = m * r;
    if (Q < 0) return std::pow(r, 2 * Q) * numerics::scaled_bessel_k(-Q, z);
    if (m == 0.0) throw DomainError("massless M_Q diverges for Q >= 0");
    if (Q == 0) return numerics::bessel_k(0, z);
    return std::pow(r, 2 * Q) * std::pow(z, -Q) * numerics::bessel_k(Q, z);
}

/// The small-argument law M_{-Q} ~ 2^{Q-1} Gamma(Q) / r^{2Q}, Q > 0.
inline double bessel_m_asymptotic(int Q, double r)
{
    if (Q <= 0) throw DomainError("the asymptotic law needs Q > 0");
    return std::ldexp(std::tgamma(static_cast<double>(Q)), Q - 1) / std::pow(r, 2 * Q);
}

struct TensorCoefficients {
    double delta = 0.0;
    double pp = 0.0;  // coefficient of p~_mu p~_nu
};

inline void check_master(int N, int D, double r)
{
    if (N < 1) throw DomainError("master integrals need N >= 1");
    if (D < 2 || D % 2 != 0) throw DomainError("dimension must be even and positive");
    if (!(r > 0.0)) throw DomainError("|p~| must be positive");
}

inline double master_J_value(int N, int D, double m, double r)
{
    check_master(N, D, r);
    return a_coefficient(N, D) * bessel_m(N - D / 2, m, r);
}

inline TensorCoefficients master_J_tensor_value(int N, int D, double m, double r)
{
    check_master(N, D, r);
    const double a = a_coefficient(N, D);
    return {a * bessel_m(N - 1 - D / 2, m, r), -a * bessel_m(N - 2 - D / 2, m, r)};
}

inline double norm(std::span<const double> v) { return std::sqrt(detail::dot(v, v)); }

/// J_N(p~) in closed form.
inline LoopResult master_J(int N, const LoopConfig& cfg, double m, std::span<const double> ptilde)
{
    cfg.structure().check_length(ptilde.size());
    const double v = master_J_value(N, cfg.D, m, norm(ptilde));
    return LoopResult{0, {v}, 0.0, LoopMethod::closed_form_bessel, 0.0};
}

/// J_{N, mu nu}(p~) in closed form.
inline LoopResult master_J_tensor(int N, const LoopConfig& cfg, double m, std::span<const double> ptilde)
{
    cfg.structure().check_length(ptilde.size());
    const auto c = master_J_tensor_value(N, cfg.D, m, norm(ptilde));
    const auto n = static_cast<std::size_t>(cfg.D);
    LoopResult out{cfg.D, std::vector<double>(n * n), 0.0, LoopMethod::closed_form_bessel, 0.0};
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            out.value[a * n + b] = (a == b ? c.delta : 0.0) + c.pp * ptilde[a] * ptilde[b];
    return out;
}

// ---------------------------------------------------------------------------
// Nonplanar parts

/**
 * Invariant decomposition delta * d + p p * pp + p~ p~ * tt of a nonplanar
 * polarization tensor, with p~ = Theta p.
 */
struct PolarizationCoefficients {
    double d = 0.0;
    double pp = 0.0;
    double tt = 0.0;
    double abs_error = 0.0;

    PolarizationCoefficients& operator+=(const PolarizationCoefficients& o)
    {
        d += o.d;
        pp += o.pp;
        tt += o.tt;
        abs_error += o.abs_error;
        return *this;
    }
    PolarizationCoefficients operator*(double w) const { return {d * w, pp * w, tt * w, abs_error * std::abs(w)}; }
};

/// Absolute tolerance of the Feynman-parameter integrals, applied to the
/// integrand normalized by |p~|^{D-2} (which makes the leading IR part O(1)).
inline constexpr double kFeynmanAbsTol = 1e-8;

/**
 * Nonplanar part of omega^i: sin^2(p^k/2) -> -cos(p^k)/2, Feynman
 * parametrization of two-propagator integrands, shift k = l - x p (which
 * leaves p^k unchanged and drops odd terms), then master integrals.
 */
inline PolarizationCoefficients omega_nonplanar_coefficients(int i, const LoopConfig& cfg, std::span<const double> p,
                                                             double abs_tol = kFeynmanAbsTol)
{
    cfg.validate();
    const SymplecticStructure s = cfg.structure();
    s.check_length(p.size());
    const int D = cfg.D;
    const double Dd = static_cast<double>(D);
    const double p2 = detail::dot(p, p);
    if (!(p2 > 0.0)) throw DomainError("external momentum must be nonzero");
    const Vec pt = s.apply_theta(p);
    const double r = norm(pt);
    const double N = static_cast<double>(cfg.higgs_count());
    const double scale = std::pow(r, D - 2);
    const double mu = cfg.mu;

    if (D == 2 && i >= 1 && i <= 3)
        throw DomainError("the gauge-sector nonplanar parts are infrared divergent in D = 2");

    // Each entry: {delta, pp, tt} normalized by `scale` (pp also by p^2, tt by r^2).
    const auto finish = [&](const numerics::QuadratureResult& q) {
        return PolarizationCoefficients{q.value[0] / scale, q.value[1] / (scale * p2), q.value[2] / (scale * r * r),
                                        q.abs_error / scale};
    };
    const auto feynman = [&](auto&& f) {
        auto q = numerics::integrate(f, 0.0, 1.0, abs_tol);
        return finish(q);
    };

    switch (i) {
    case 1:
        return feynman([&](double x) {
            const double M = std::sqrt(x * (1.0 - x) * p2);
            const double J2 = master_J_value(2, D, M, r);
            const auto Jt = master_J_tensor_value(2, D, M, r);
            const double c1 = (1.0 + x) * (1.0 + x) + (2.0 - x) * (2.0 - x);
            const double c2 = (Dd - 6.0) - 2.0 * x * (2.0 * Dd - 3.0) + x * x * (4.0 * Dd - 6.0);
            const double trace = Dd * Jt.delta + Jt.pp * r * r;
            const double d = -2.0 * (2.0 * trace + c1 * p2 * J2 + (4.0 * Dd - 6.0) * Jt.delta);
            const double pp = -2.0 * c2 * J2;
            const double tt = -2.0 * (4.0 * Dd - 6.0) * Jt.pp;
            return std::vector<double>{d * scale, pp * scale * p2, tt * scale * r * r};
        });
    case 2:
        return feynman([&](double x) {
            const double M = std::sqrt(x * (1.0 - x) * p2);
            const double J2 = master_J_value(2, D, M, r);
            const auto Jt = master_J_tensor_value(2, D, M, r);
            return std::vector<double>{-2.0 * Jt.delta * scale, -2.0 * x * x * J2 * scale * p2,
                                       -2.0 * Jt.pp * scale * r * r};
        });
    case 3: return {-4.0 * (Dd - 1.0) * master_J_value(1, D, 0.0, r), 0.0, 0.0, 0.0};
    case 4:
        if (N == 0.0) return {};
        return feynman([&](double x) {
            const double M = std::sqrt(mu * mu + x * (1.0 - x) * p2);
            const double J2 = master_J_value(2, D, M, r);
            const auto Jt = master_J_tensor_value(2, D, M, r);
            const double w = (1.0 - 2.0 * x) * (1.0 - 2.0 * x);
            return std::vector<double>{-2.0 * N * 4.0 * Jt.delta * scale, -2.0 * N * w * J2 * scale * p2,
                                       -2.0 * N * 4.0 * Jt.pp * scale * r * r};
        });
    case 5:
        if (N == 0.0) return {};
        return {2.0 * N * master_J_value(1, D, mu, r), 0.0, 0.0, 0.0};
    default: throw DomainError("omega index must be in 1..5");
    }
}

inline LoopResult to_tensor(const PolarizationCoefficients& c, const LoopConfig& cfg, std::span<const double> p)
{
    const SymplecticStructure s = cfg.structure();
    const Vec pt = s.apply_theta(p);
    const auto n = static_cast<std::size_t>(cfg.D);
    LoopResult out{cfg.D, std::vector<double>(n * n), c.abs_error, LoopMethod::closed_form_bessel, 0.0};
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            out.value[a * n + b] = (a == b ? c.d : 0.0) + c.pp * p[a] * p[b] + c.tt * pt[a] * pt[b];
    return out;
}

/// Nonplanar part of omega^i_{mu nu}(p) as a D x D tensor.
inline LoopResult omega_nonplanar(int i, const LoopConfig& cfg, std::span<const double> p,
                                  double abs_tol = kFeynmanAbsTol)
{
    return to_tensor(omega_nonplanar_coefficients(i, cfg, p, abs_tol), cfg, p);
}

// ---------------------------------------------------------------------------
// IR coefficient

/**
 * Multipliers applied to the five diagrams before they are summed.
 *
 * `verbatim` uses the displayed prefactors as they stand. `ward_reconciled`
 * applies the symmetry factor 1/2 to the two bubbles with identical internal
 * lines (omega1, omega4), a relative minus sign to the ghost loop (omega2), and
 * fixes the two tadpoles by transversality: w2/w1 = -2, w3/w1 = -1, w5/w4 = 2.
 */
struct DiagramWeights {
    std::array<double, 5> w{1.0, 1.0, 1.0, 1.0, 1.0};

    static DiagramWeights verbatim() { return {}; }
    static DiagramWeights ward_reconciled() { return {{0.5, -1.0, -0.5, 0.5, 1.0}}; }
};

/// (D + N - 2) Gamma(D/2) / pi^{D/2}.
inline double ir_target(const LoopConfig& cfg)
{
    return (cfg.D + cfg.higgs_count() - 2) * std::tgamma(0.5 * cfg.D) / std::pow(std::numbers::pi, 0.5 * cfg.D);
}

/// External momentum whose p~ = Theta p equals |p~| e_1.
inline Vec momentum_for_ptilde(const LoopConfig& cfg, double ptilde_norm)
{
    const SymplecticStructure s = cfg.structure();
    Vec e(static_cast<std::size_t>(cfg.D), 0.0);
    e[0] = ptilde_norm;
    return s.apply_theta_inv(e);
}

/// Summed nonplanar tensor coefficients at one momentum, with the given weights.
inline PolarizationCoefficients summed_nonplanar(const LoopConfig& cfg, std::span<const double> p,
                                                 const DiagramWeights& w, double abs_tol = kFeynmanAbsTol)
{
    PolarizationCoefficients total;
    for (int i = 1; i <= 5; ++i) {
        if (cfg.D == 2 && i <= 3) continue;  // the gauge sector carries a factor (D - 2)
        total += omega_nonplanar_coefficients(i, cfg, p, abs_tol) * w.w[static_cast<std::size_t>(i - 1)];
    }
    return total;
}

struct IrSample {
    double ptilde_norm = 0.0;
    /// Pointwise coefficient of p~ p~ / (p~^2)^{D/2}.
    double c_point = 0.0;
    /// delta-residual in the same normalization.
    double residual = 0.0;
};

struct IrFit {
    LoopResult coefficient;  // scalar c, fit residual and error estimate
    std::vector<IrSample> samples;
    double target = 0.0;

    double relative_error() const { return std::abs(coefficient.scalar() / target - 1.0); }
};

/**
 * One sample: p~ along e_1. The p~ p~ part is T(e1, e1) minus the delta part;
 * the delta part is read along a direction orthogonal to both p and p~ (e_3
 * for D >= 4; in D = 2 the tensor is spanned by delta and p~ p~ alone, so it
 * is read along p).
 */
inline IrSample ir_sample(const LoopConfig& cfg, double ptilde_norm, const DiagramWeights& w,
                          double abs_tol = kFeynmanAbsTol)
{
    const Vec p = momentum_for_ptilde(cfg, ptilde_norm);
    const LoopResult T = to_tensor(summed_nonplanar(cfg, p, w, abs_tol), cfg, p);
    const int side = cfg.D >= 4 ? 3 : 2;
    const double residual = T(side, side);
    const double r2 = ptilde_norm * ptilde_norm;
    const double norm = std::pow(r2, 0.5 * cfg.D) / r2;
    return {ptilde_norm, (T(1, 1) - residual) * norm, residual * std::pow(r2, 0.5 * cfg.D - 1.0)};
}

/// Validates a fit window: at least 4 distinct positive values spanning a decade, all with mu |p~| <= 0.1.
inline void check_window(const LoopConfig& cfg, std::span<const double> ptilde_norms)
{
    if (ptilde_norms.size() < 4) throw DomainError("the fit needs at least 4 momenta");
    std::vector<double> v(ptilde_norms.begin(), ptilde_norms.end());
    std::sort(v.begin(), v.end());
    if (!(v.front() > 0.0)) throw DomainError("momenta must be positive");
    if (std::adjacent_find(v.begin(), v.end()) != v.end()) throw DomainError("momenta must be distinct");
    if (v.back() < 10.0 * v.front() * (1.0 - 1e-9)) throw DomainError("momenta must span a decade");
    const double mass = cfg.mu > 0.0 ? cfg.mu : 1.0;
    if (v.back() * mass > 0.1 * (1.0 + 1e-12)) throw DomainError("momenta must satisfy mu |p~| <= 0.1");
}

/// n log-spaced values in [lo, hi].
inline std::vector<double> log_window(double lo, double hi, int n)
{
    if (n < 2 || !(lo > 0.0) || !(hi > lo)) throw DomainError("invalid window");
    std::vector<double> out;
    for (int i = 0; i < n; ++i)
        out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(n - 1)));
    return out;
}

/**
 * Least-squares constant fit of the pointwise coefficients over the window.
 * The fit residual is the RMS deviation of the samples from the constant.
 */
inline IrFit ir_coefficient(const LoopConfig& cfg, std::span<const double> ptilde_norms,
                            const DiagramWeights& w = DiagramWeights::ward_reconciled(),
                            double abs_tol = kFeynmanAbsTol)
{
    cfg.validate();
    check_window(cfg, ptilde_norms);
    IrFit fit;
    fit.target = ir_target(cfg);
    double sum = 0.0;
    for (double r : ptilde_norms) {
        fit.samples.push_back(ir_sample(cfg, r, w, abs_tol));
        sum += fit.samples.back().c_point;
    }
    const double c = sum / static_cast<double>(fit.samples.size());
    double ss = 0.0;
    for (const auto& smp : fit.samples) ss += (smp.c_point - c) * (smp.c_point - c);
    const double rms = std::sqrt(ss / static_cast<double>(fit.samples.size()));
    fit.coefficient = LoopResult{0, {c}, std::max(rms, abs_tol), LoopMethod::small_p_fit, rms};
    return fit;
}

}  // namespace moyal::oneloop
