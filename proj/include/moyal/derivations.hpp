#pragma once

#include <cmath>
#include <compare>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "moyal/star.hpp"

namespace moyal {

/**
 * A derivation of the Moyal algebra.
 *
 * Partial(mu) is the spatial derivative, Sym(mu, nu) the symplectic rotation
 * whose eta-value is i xi_mu xi_nu (stored with mu <= nu) and Inner(P) is Ad_P.
 * Ordering and equality look only at (kind, mu, nu), which is what the basis
 * tables need; Inner generators are not meant to be used as keys.
 */
struct Generator {
    enum class Kind { Partial, Sym, Inner };

    Kind kind = Kind::Partial;
    int mu = 0;
    int nu = 0;
    std::shared_ptr<const MoyalElement> P;

    static Generator partial(int mu) { return Generator{Kind::Partial, mu, 0, nullptr}; }

    static Generator sym(int mu, int nu)
    {
        if (mu > nu) std::swap(mu, nu);
        return Generator{Kind::Sym, mu, nu, nullptr};
    }

    static Generator inner(MoyalElement p)
    {
        return Generator{Kind::Inner, 0, 0, std::make_shared<const MoyalElement>(std::move(p))};
    }

    /// "d1", "X12"; inner derivations print as "Ad".
    std::string name() const
    {
        switch (kind) {
        case Kind::Partial: return "d" + std::to_string(mu);
        case Kind::Sym: return "X" + std::to_string(mu) + std::to_string(nu);
        case Kind::Inner: return "Ad";
        }
        return "?";
    }

    friend auto operator<=>(const Generator& a, const Generator& b)
    {
        if (auto c = a.kind <=> b.kind; c != 0) return c;
        if (auto c = a.mu <=> b.mu; c != 0) return c;
        return a.nu <=> b.nu;
    }
    friend bool operator==(const Generator& a, const Generator& b) { return (a <=> b) == 0; }
};

/// Linear combination of basis generators plus the central (unit) part.
struct GeneratorCombination {
    Complex central{};
    std::map<Generator, Complex> coeffs;
};

enum class BasisKind { G1, G2 };

/**
 * The derivation algebra G1 = {d_mu} or G2 = {d_mu, X_(mu nu)} over a fixed
 * structure, together with the map eta.
 *
 * `sym_scale` multiplies eta on the Sym sector; the plain algebra uses 1 and the
 * rescaled gauge theory uses mu * theta.
 */
class DerivationAlgebra {
public:
    explicit DerivationAlgebra(StructurePtr s, double sym_scale = 1.0)
        : s_(std::move(s)), sym_scale_(sym_scale)
    {
        if (!(sym_scale > 0.0)) throw DomainError("sym_scale must be positive");
    }

    const StructurePtr& structure() const noexcept { return s_; }
    double sym_scale() const noexcept { return sym_scale_; }

    std::vector<Generator> basis(BasisKind kind) const
    {
        std::vector<Generator> out;
        const int d = s_->dimension();
        for (int mu = 1; mu <= d; ++mu) out.push_back(Generator::partial(mu));
        if (kind == BasisKind::G2)
            for (int mu = 1; mu <= d; ++mu)
                for (int nu = mu; nu <= d; ++nu) out.push_back(Generator::sym(mu, nu));
        return out;
    }

    void check(const Generator& X) const
    {
        switch (X.kind) {
        case Generator::Kind::Partial: s_->check_index(X.mu); break;
        case Generator::Kind::Sym:
            s_->check_index(X.mu);
            s_->check_index(X.nu);
            break;
        case Generator::Kind::Inner:
            if (!X.P) throw DomainError("inner derivation without a polynomial");
            require_same(*X.P, MoyalElement(s_));
            break;
        }
    }

    /// eta(X) = P - P(0) for the polynomial P with X = Ad_P.
    MoyalElement eta(const Generator& X) const
    {
        check(X);
        switch (X.kind) {
        case Generator::Kind::Partial: return xi(s_, X.mu) * I;
        case Generator::Kind::Sym:
            return pointwise(xi(s_, X.mu), xi(s_, X.nu)) * (I * sym_scale_);
        case Generator::Kind::Inner: {
            const MoyalElement& p = *X.P;
            if (!p.is_polynomial()) throw DomainError("eta needs a polynomial argument");
            if (p.degree() > 2) throw DomainError("eta needs a polynomial of degree at most 2");
            return p - p.constant_term();
        }
        }
        throw DomainError("unknown generator kind");
    }

    /// X(a). Partial derivatives act term-wise; the rest as [eta(X), a].
    MoyalElement apply(const Generator& X, const MoyalElement& a) const
    {
        check(X);
        require_same(a, MoyalElement(s_));
        switch (X.kind) {
        case Generator::Kind::Partial: return a.partial(X.mu);
        case Generator::Kind::Sym: return commutator(eta(X), a);
        case Generator::Kind::Inner: return commutator(*X.P, a);
        }
        throw DomainError("unknown generator kind");
    }

    /**
     * Decomposes a polynomial of degree <= 2 in the basis {1, eta_mu, eta_(mu nu)}.
     * Throws DomainError when the element is outside that span.
     */
    GeneratorCombination project(const MoyalElement& p) const
    {
        require_same(p, MoyalElement(s_));
        if (!p.is_polynomial() || p.degree() > 2)
            throw DomainError("element is not in the span of the eta basis");
        const int d = s_->dimension();
        GeneratorCombination out;
        out.central = p.constant_term();

        // x_a = -Theta_{a m} xi_m, eta_m = i xi_m, eta_(m s) = i sym_scale xi_m xi_s.
        for (const auto& [key, c] : p.terms()) {
            const int deg = key.degree();
            if (deg == 0) continue;
            std::vector<int> idx;
            for (int a = 0; a < d; ++a)
                for (int r = 0; r < key.alpha[static_cast<std::size_t>(a)]; ++r) idx.push_back(a + 1);
            if (deg == 1) {
                for (int m = 1; m <= d; ++m) {
                    const double t = -s_->Theta(idx[0], m);
                    if (t != 0.0) out.coeffs[Generator::partial(m)] += c * t / I;
                }
            } else {
                for (int m = 1; m <= d; ++m) {
                    const double t1 = -s_->Theta(idx[0], m);
                    if (t1 == 0.0) continue;
                    for (int n = 1; n <= d; ++n) {
                        const double t2 = -s_->Theta(idx[1], n);
                        if (t2 == 0.0) continue;
                        out.coeffs[Generator::sym(m, n)] += c * t1 * t2 / (I * sym_scale_);
                    }
                }
            }
        }
        std::erase_if(out.coeffs, [&](const auto& kv) {
            return std::abs(kv.second) <= kPruneRelative * std::max(1.0, p.norm());
        });
        return out;
    }

    /// sum_i c_i eta(X_i) + central.
    MoyalElement assemble(const GeneratorCombination& comb) const
    {
        MoyalElement out = MoyalElement::constant(s_, comb.central);
        for (const auto& [X, c] : comb.coeffs) out += eta(X) * c;
        return out;
    }

    /// Same combination without the central part, i.e. eta of the derivation bracket.
    MoyalElement assemble_noncentral(const GeneratorCombination& comb) const
    {
        GeneratorCombination copy = comb;
        copy.central = 0.0;
        return assemble(copy);
    }

    /**
     * [eta(X), eta(Y)] decomposed in the eta basis. The derivation bracket
     * [X, Y] is the same combination with the central part dropped.
     */
    GeneratorCombination bracket_generators(const Generator& X, const Generator& Y) const
    {
        return project(commutator(eta(X), eta(Y)));
    }

    /// Theta_{mu nu} dP1/dx_mu dP2/dx_nu for pure polynomials.
    MoyalElement poisson_bracket(const MoyalElement& p1, const MoyalElement& p2) const
    {
        require_same(p1, p2);
        if (!p1.is_polynomial() || !p2.is_polynomial())
            throw DomainError("Poisson bracket is defined here for polynomials only");
        MoyalElement out(s_);
        const int d = s_->dimension();
        for (int mu = 1; mu <= d; ++mu)
            for (int nu = 1; nu <= d; ++nu) {
                const double t = s_->Theta(mu, nu);
                if (t != 0.0) out += pointwise(p1.partial(mu), p2.partial(nu)) * t;
            }
        return out;
    }

private:
    StructurePtr s_;
    double sym_scale_;
};

/// The D = 2 rotation basis eta_X1, eta_X2, eta_X3.
struct SpecialBasisD2 {
    MoyalElement eta_x1;
    MoyalElement eta_x2;
    MoyalElement eta_x3;
};

inline SpecialBasisD2 d2_special_basis(const StructurePtr& s)
{
    if (s->dimension() != 2) throw DomainError("the special basis exists only for D = 2");
    const double th = s->theta();
    const double r2 = std::sqrt(2.0);
    const auto x1sq = MoyalElement::monomial(s, {2, 0});
    const auto x2sq = MoyalElement::monomial(s, {0, 2});
    const auto x1x2 = MoyalElement::monomial(s, {1, 1});
    const Complex c4 = I / (4.0 * r2 * th);
    const Complex c2 = I / (2.0 * r2 * th);
    return SpecialBasisD2{(x1sq + x2sq) * c4, (x1sq - x2sq) * c4, x1x2 * c2};
}

}  // namespace moyal
