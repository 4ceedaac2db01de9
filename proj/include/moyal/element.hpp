#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <complex>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "moyal/error.hpp"
#include "moyal/symplectic.hpp"

namespace moyal {

using Complex = std::complex<double>;

inline constexpr Complex I{0.0, 1.0};

/// Coefficients below this fraction of the largest modulus are dropped.
inline constexpr double kPruneRelative = 1e-12;

/**
 * Plane-wave components are rounded to a dyadic grid of spacing 2^-36. Sums of
 * grid values are exact in double precision for the magnitudes used here, so
 * e^{ik x} * e^{ip x} lands on the same key no matter how the product was
 * bracketed. Without this, (a*b)*c and a*(b*c) could split one term into two
 * keys differing in the last ulp.
 */
inline double snap_wave(double k)
{
    constexpr double grid = 68719476736.0;  // 2^36
    if (!std::isfinite(k))
        throw DomainError("plane-wave component must be finite");
    return std::nearbyint(k * grid) / grid;
}

/// Exponents alpha of x^alpha and the plane-wave vector k of e^{i k.x}.
struct TermKey {
    std::vector<int> alpha;
    std::vector<double> k;

    auto operator<=>(const TermKey&) const = default;
    bool operator==(const TermKey&) const = default;

    int degree() const
    {
        int d = 0;
        for (int a : alpha) d += a;
        return d;
    }

    bool has_wave() const
    {
        return std::any_of(k.begin(), k.end(), [](double v) { return v != 0.0; });
    }
};

struct Term {
    TermKey key;
    Complex coeff;
};

/**
 * Finite complex combination of x^alpha e^{i k.x} terms over a fixed
 * symplectic structure. Values are immutable from the outside: every
 * arithmetic operation returns a new, pruned element.
 */
class MoyalElement {
public:
    using TermMap = std::map<TermKey, Complex>;

    explicit MoyalElement(StructurePtr s) : s_(std::move(s))
    {
        if (!s_) throw DomainError("null symplectic structure");
    }

    MoyalElement(StructurePtr s, TermMap terms) : MoyalElement(std::move(s))
    {
        for (auto& [key, c] : terms) accumulate(key, c);
        prune();
    }

    static MoyalElement zero(StructurePtr s) { return MoyalElement(std::move(s)); }

    static MoyalElement constant(StructurePtr s, Complex c)
    {
        const auto d = static_cast<std::size_t>(s->dimension());
        return term(s, std::vector<int>(d, 0), std::vector<double>(d, 0.0), c);
    }

    static MoyalElement unit(StructurePtr s) { return constant(std::move(s), 1.0); }

    static MoyalElement term(StructurePtr s, std::vector<int> alpha, std::vector<double> k,
                             Complex c = 1.0)
    {
        MoyalElement e(std::move(s));
        e.accumulate(TermKey{std::move(alpha), std::move(k)}, c);
        e.prune();
        return e;
    }

    static MoyalElement monomial(StructurePtr s, std::vector<int> alpha, Complex c = 1.0)
    {
        const auto d = static_cast<std::size_t>(s->dimension());
        return term(std::move(s), std::move(alpha), std::vector<double>(d, 0.0), c);
    }

    static MoyalElement plane_wave(StructurePtr s, std::vector<double> k, Complex c = 1.0)
    {
        const auto d = static_cast<std::size_t>(s->dimension());
        return term(std::move(s), std::vector<int>(d, 0), std::move(k), c);
    }

    const StructurePtr& structure() const noexcept { return s_; }
    int dimension() const noexcept { return s_->dimension(); }
    const TermMap& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Coefficient of the given key, zero if absent.
    Complex coefficient(const TermKey& key) const
    {
        auto it = terms_.find(normalized_key(key));
        return it == terms_.end() ? Complex{} : it->second;
    }

    Complex constant_term() const
    {
        const auto d = static_cast<std::size_t>(dimension());
        return coefficient(TermKey{std::vector<int>(d, 0), std::vector<double>(d, 0.0)});
    }

    /// Largest total degree, -1 for the zero element.
    int degree() const
    {
        int d = -1;
        for (const auto& [key, c] : terms_) d = std::max(d, key.degree());
        return d;
    }

    bool is_polynomial() const
    {
        return std::none_of(terms_.begin(), terms_.end(),
                            [](const auto& kv) { return kv.first.has_wave(); });
    }

    /// Distance from the nearest multiple of the unit (max-coefficient norm of the non-constant terms).
    double noncentral_norm() const
    {
        double m = 0.0;
        for (const auto& [key, c] : terms_)
            if (key.degree() != 0 || key.has_wave()) m = std::max(m, std::abs(c));
        return m;
    }

    /// True when every non-constant coefficient is at most tol.
    bool is_multiple_of_unit(double tol = 0.0) const { return noncentral_norm() <= tol; }

    /// Max-coefficient norm.
    double norm() const
    {
        double m = 0.0;
        for (const auto& [key, c] : terms_) m = std::max(m, std::abs(c));
        return m;
    }

    Complex evaluate(std::span<const double> x) const
    {
        s_->check_length(x.size());
        Complex sum{};
        for (const auto& [key, c] : terms_) {
            double mono = 1.0;
            double phase = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                for (int p = 0; p < key.alpha[i]; ++p) mono *= x[i];
                phase += key.k[i] * x[i];
            }
            sum += c * mono * std::polar(1.0, phase);
        }
        return sum;
    }

    /// Term-wise (alpha, k, c) -> (alpha, -k, conj(c)).
    MoyalElement adjoint() const
    {
        MoyalElement out(s_);
        for (const auto& [key, c] : terms_) {
            TermKey flipped = key;
            for (double& v : flipped.k) v = v == 0.0 ? 0.0 : -v;
            out.terms_.emplace(std::move(flipped), std::conj(c));
        }
        return out;
    }

    /// Ordinary derivative with respect to x_mu (1-based).
    MoyalElement partial(int mu) const
    {
        s_->check_index(mu);
        const auto i = static_cast<std::size_t>(mu - 1);
        MoyalElement out(s_);
        for (const auto& [key, c] : terms_) {
            if (key.alpha[i] > 0) {
                TermKey lowered = key;
                lowered.alpha[i] -= 1;
                out.accumulate(lowered, c * static_cast<double>(key.alpha[i]));
            }
            if (key.k[i] != 0.0) out.accumulate(key, c * I * key.k[i]);
        }
        out.prune();
        return out;
    }

    /// Commutative pointwise product of the underlying functions.
    friend MoyalElement pointwise(const MoyalElement& a, const MoyalElement& b)
    {
        require_same(a, b);
        MoyalElement out(a.s_);
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) {
                TermKey key = ka;
                for (std::size_t i = 0; i < key.alpha.size(); ++i) {
                    key.alpha[i] += kb.alpha[i];
                    key.k[i] += kb.k[i];
                }
                out.accumulate(key, ca * cb);
            }
        out.prune();
        return out;
    }

    MoyalElement& operator+=(const MoyalElement& other)
    {
        require_same(*this, other);
        for (const auto& [key, c] : other.terms_) accumulate(key, c);
        prune();
        return *this;
    }

    MoyalElement& operator-=(const MoyalElement& other)
    {
        require_same(*this, other);
        for (const auto& [key, c] : other.terms_) accumulate(key, -c);
        prune();
        return *this;
    }

    MoyalElement& operator*=(Complex c)
    {
        if (c == Complex{}) {
            terms_.clear();
            return *this;
        }
        for (auto& [key, v] : terms_) v *= c;
        return *this;
    }

    friend MoyalElement operator+(MoyalElement a, const MoyalElement& b) { return a += b; }
    friend MoyalElement operator-(MoyalElement a, const MoyalElement& b) { return a -= b; }
    friend MoyalElement operator-(MoyalElement a) { return a *= -1.0; }
    friend MoyalElement operator*(MoyalElement a, Complex c) { return a *= c; }
    friend MoyalElement operator*(Complex c, MoyalElement a) { return a *= c; }
    friend MoyalElement operator*(MoyalElement a, double c) { return a *= Complex(c); }
    friend MoyalElement operator*(double c, MoyalElement a) { return a *= Complex(c); }

    /// Adds c to the constant term.
    friend MoyalElement operator+(MoyalElement a, Complex c)
    {
        a += constant(a.s_, c);
        return a;
    }
    friend MoyalElement operator-(MoyalElement a, Complex c) { return std::move(a) + (-c); }

    /// Exact structural equality (same terms, same coefficients).
    friend bool operator==(const MoyalElement& a, const MoyalElement& b)
    {
        return *a.s_ == *b.s_ && a.terms_ == b.terms_;
    }

    friend void require_same(const MoyalElement& a, const MoyalElement& b)
    {
        if (a.s_ != b.s_ && !(*a.s_ == *b.s_)) throw StructureMismatch();
    }

    /// Low-level accumulation used by the product kernels. Call prune() afterwards.
    void accumulate(const TermKey& key, Complex c)
    {
        if (c == Complex{}) return;
        TermKey k = normalized_key(key);
        auto [it, inserted] = terms_.try_emplace(std::move(k), c);
        if (!inserted) it->second += c;
    }

    void prune()
    {
        const double cutoff = kPruneRelative * norm();
        std::erase_if(terms_, [cutoff](const auto& kv) {
            return kv.second == Complex{} || std::abs(kv.second) < cutoff;
        });
    }

private:
    TermKey normalized_key(const TermKey& key) const
    {
        const auto d = static_cast<std::size_t>(dimension());
        if (key.alpha.size() != d || key.k.size() != d)
            throw DomainError("term key has wrong dimension");
        TermKey out = key;
        for (int a : out.alpha)
            if (a < 0) throw DomainError("negative exponent in term");
        for (double& v : out.k) {
            v = snap_wave(v);
            if (v == 0.0) v = 0.0;  // fold -0.0 into +0.0
        }
        return out;
    }

    StructurePtr s_;
    TermMap terms_;
};

/// ||a - b|| <= tol * max(1, ||a||, ||b||) in the max-coefficient norm.
inline bool approx_equal(const MoyalElement& a, const MoyalElement& b, double tol)
{
    const double scale = std::max({1.0, a.norm(), b.norm()});
    return (a - b).norm() <= tol * scale;
}

/// Relative distance used by the reports: ||a - b|| / max(1, ||a||, ||b||).
inline double relative_distance(const MoyalElement& a, const MoyalElement& b)
{
    const double scale = std::max({1.0, a.norm(), b.norm()});
    return (a - b).norm() / scale;
}

/// The coordinate function x_mu.
inline MoyalElement coordinate(const StructurePtr& s, int mu)
{
    s->check_index(mu);
    std::vector<int> alpha(static_cast<std::size_t>(s->dimension()), 0);
    alpha[static_cast<std::size_t>(mu - 1)] = 1;
    return MoyalElement::monomial(s, std::move(alpha));
}

/// xi_mu = -ThetaInv_{mu nu} x_nu.
inline MoyalElement xi(const StructurePtr& s, int mu)
{
    s->check_index(mu);
    MoyalElement out(s);
    for (int nu = 1; nu <= s->dimension(); ++nu) {
        const double c = -s->ThetaInv(mu, nu);
        if (c != 0.0) out += coordinate(s, nu) * c;
    }
    return out;
}

}  // namespace moyal
