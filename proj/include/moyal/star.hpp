#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include "moyal/element.hpp"

namespace moyal {

namespace detail {

inline double binomial(int n, int k)
{
    double r = 1.0;
    for (int j = 1; j <= k; ++j) r = r * static_cast<double>(n - k + j) / static_cast<double>(j);
    return r;
}

inline double falling(int n, int j)
{
    double r = 1.0;
    for (int t = 0; t < j; ++t) r *= static_cast<double>(n - t);
    return r;
}

/**
 * Dense polynomial over a box of exponents: entry at multi-index m (m_i < extent_i)
 * is stored at sum_i m_i * stride_i.
 */
struct DenseBox {
    std::vector<int> extent;
    std::vector<std::size_t> stride;
    std::vector<Complex> c;

    explicit DenseBox(std::vector<int> ext) : extent(std::move(ext)), stride(extent.size())
    {
        std::size_t n = 1;
        for (std::size_t i = extent.size(); i-- > 0;) {
            stride[i] = n;
            n *= static_cast<std::size_t>(extent[i]);
        }
        c.assign(n, Complex{});
    }

    /// Decodes a flat position into its exponent along axis i.
    int exponent(std::size_t flat, std::size_t i) const
    {
        return static_cast<int>((flat / stride[i]) % static_cast<std::size_t>(extent[i]));
    }
};

/// Dense coefficients of prod_i (z_i + shift_i)^{alpha_i}, row-major with extents alpha_i + 1.
inline std::vector<Complex> shifted_power_dense(const std::vector<int>& alpha, const std::vector<double>& shift)
{
    // One factor per axis; the full polynomial is their outer product.
    std::size_t n = 1;
    for (int a : alpha) n *= static_cast<std::size_t>(a + 1);
    std::vector<Complex> out(n, Complex{});
    out[0] = 1.0;
    std::size_t filled = 1;  // product of extents of processed axes, row-major from the last axis
    std::vector<Complex> tmp;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        const int a = alpha[i];
        const auto ext = static_cast<std::size_t>(a + 1);
        tmp.assign(filled * ext, Complex{});
        for (std::size_t p = 0; p < filled; ++p)
            for (int j = 0; j <= a; ++j) {
                // (z + s)^a = sum_j C(a, j) z^j s^(a-j)
                const double w = binomial(a, j) * std::pow(shift[i], a - j);
                tmp[p * ext + static_cast<std::size_t>(j)] = out[p] * w;
            }
        filled *= ext;
        std::copy(tmp.begin(), tmp.end(), out.begin());
    }
    return out;
}

/// Applies exp(c d/d(axis a) d/d(axis b)) to a dense bi-polynomial.
inline void apply_coupling(DenseBox& box, std::size_t axis_a, std::size_t axis_b, Complex c)
{
    const int ea = box.extent[axis_a], eb = box.extent[axis_b];
    if (ea <= 1 || eb <= 1) return;
    std::vector<Complex> out(box.c.size(), Complex{});
    for (std::size_t f = 0; f < box.c.size(); ++f) {
        const Complex v = box.c[f];
        if (v == Complex{}) continue;
        const int a = box.exponent(f, axis_a);
        const int b = box.exponent(f, axis_b);
        Complex cj = 1.0;
        double fact = 1.0;
        for (int j = 0; j <= std::min(a, b); ++j) {
            if (j > 0) {
                cj *= c;
                fact *= static_cast<double>(j);
            }
            const std::size_t target =
                f - static_cast<std::size_t>(j) * (box.stride[axis_a] + box.stride[axis_b]);
            out[target] += v * cj * (falling(a, j) * falling(b, j) / fact);
        }
    }
    box.c = std::move(out);
}

/**
 * Exact Moyal product of two single terms c1 x^a1 e^{ik1.x} and c2 x^a2 e^{ik2.x},
 * accumulated into `out` (the caller prunes).
 *
 * The bidifferential exponential splits into four commuting pieces: the phase
 * exp(-(i/2) k1 Theta k2), a translation of the left monomial by -(1/2) Theta k2,
 * a translation of the right monomial by +(1/2) Theta k1, and the finite coupling
 * exp((i/2) Theta_{mu nu} d/dx_mu d/dy_nu) between the two monomials, after
 * which y is set equal to x.
 */
inline void star_term_into(const SymplecticStructure& s, const TermKey& t1, Complex c1, const TermKey& t2,
                           Complex c2, MoyalElement& out)
{
    const auto dim = static_cast<std::size_t>(s.dimension());
    const auto& [a1, k1] = t1;
    const auto& [a2, k2] = t2;
    if (a1.size() != dim || a2.size() != dim || k1.size() != dim || k2.size() != dim)
        throw DomainError("term does not match the structure dimension");

    const Complex phase = c1 * c2 * std::polar(1.0, -0.5 * s.wedge(k1, k2));
    std::vector<double> k(dim);
    for (std::size_t i = 0; i < dim; ++i) k[i] = k1[i] + k2[i];

    const bool poly1 = std::all_of(a1.begin(), a1.end(), [](int a) { return a == 0; });
    const bool poly2 = std::all_of(a2.begin(), a2.end(), [](int a) { return a == 0; });
    if (poly1 && poly2) {
        out.accumulate(TermKey{a1, std::move(k)}, phase);
        return;
    }

    std::vector<double> u = s.apply_theta(k2);
    std::vector<double> v = s.apply_theta(k1);
    for (auto& w : u) w *= -0.5;
    for (auto& w : v) w *= 0.5;

    const auto p1 = shifted_power_dense(a1, u);
    const auto p2 = shifted_power_dense(a2, v);

    std::vector<int> ext(2 * dim);
    for (std::size_t i = 0; i < dim; ++i) {
        ext[i] = a1[i] + 1;
        ext[dim + i] = a2[i] + 1;
    }
    DenseBox bi(ext);
    for (std::size_t i = 0; i < p1.size(); ++i) {
        if (p1[i] == Complex{}) continue;
        for (std::size_t j = 0; j < p2.size(); ++j) bi.c[i * p2.size() + j] = p1[i] * p2[j];
    }

    for (int mu = 1; mu <= s.dimension(); ++mu)
        for (int nu = 1; nu <= s.dimension(); ++nu) {
            const double th = s.Theta(mu, nu);
            if (th == 0.0) continue;
            apply_coupling(bi, static_cast<std::size_t>(mu - 1), dim + static_cast<std::size_t>(nu - 1),
                           0.5 * I * th);
        }

    TermKey key{std::vector<int>(dim), std::move(k)};
    for (std::size_t f = 0; f < bi.c.size(); ++f) {
        if (bi.c[f] == Complex{}) continue;
        for (std::size_t i = 0; i < dim; ++i) key.alpha[i] = bi.exponent(f, i) + bi.exponent(f, dim + i);
        out.accumulate(key, phase * bi.c[f]);
    }
}

}  // namespace detail

inline MoyalElement star_term(const StructurePtr& s, const Term& t1, const Term& t2)
{
    MoyalElement out(s);
    detail::star_term_into(*s, t1.key, t1.coeff, t2.key, t2.coeff, out);
    out.prune();
    return out;
}

/// Bilinear extension of star_term.
inline MoyalElement star(const MoyalElement& a, const MoyalElement& b)
{
    require_same(a, b);
    const auto& s = a.structure();
    MoyalElement out(s);
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms()) detail::star_term_into(*s, ka, ca, kb, cb, out);
    out.prune();
    return out;
}

template <class... Rest>
MoyalElement star(const MoyalElement& a, const MoyalElement& b, const Rest&... rest)
{
    return star(star(a, b), rest...);
}

inline MoyalElement commutator(const MoyalElement& a, const MoyalElement& b)
{
    return star(a, b) - star(b, a);
}

inline MoyalElement anticommutator(const MoyalElement& a, const MoyalElement& b)
{
    return star(a, b) + star(b, a);
}

inline MoyalElement involution(const MoyalElement& a) { return a.adjoint(); }

inline MoyalElement partial(int mu, const MoyalElement& a) { return a.partial(mu); }

/// ||g^dagger * g - 1|| <= tol in the max-coefficient norm.
inline bool is_unitary(const MoyalElement& g, double tol)
{
    return (star(g.adjoint(), g) - MoyalElement::unit(g.structure())).norm() <= tol;
}

}  // namespace moyal
