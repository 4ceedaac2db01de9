#pragma once

#include <map>
#include <utility>
#include <vector>

#include "moyal/derivations.hpp"

namespace moyal {

/// Tolerance used to accept gauge elements as unitary.
inline constexpr double kUnitaryTolerance = 1e-10;

using CovariantCoordinates = std::map<Generator, MoyalElement>;
using CurvatureTable = std::map<std::pair<Generator, Generator>, MoyalElement>;

/**
 * Connection on the Moyal algebra viewed as a right module over itself, in the
 * rescaled convention where the generator X contributes -i A(X).
 *
 * The Sym sector uses eta_(mu nu) = (mu theta) i xi_mu xi_nu. `mu` is the mass
 * scale of that rescaling and `alpha` the coupling in front of the action.
 */
class ConnectionForm {
public:
    ConnectionForm(StructurePtr s, BasisKind basis, double mu = 1.0, double alpha = 1.0)
        : alg_(s, mu * s->theta()), basis_kind_(basis), mu_(mu), alpha_(alpha)
    {
        if (!(mu > 0.0)) throw DomainError("mu must be positive");
        if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
        for (const auto& X : alg_.basis(basis)) comps_.emplace(X, MoyalElement(s));
    }

    const DerivationAlgebra& algebra() const noexcept { return alg_; }
    const StructurePtr& structure() const noexcept { return alg_.structure(); }
    BasisKind basis_kind() const noexcept { return basis_kind_; }
    std::vector<Generator> basis() const { return alg_.basis(basis_kind_); }
    double mu() const noexcept { return mu_; }
    double alpha() const noexcept { return alpha_; }

    bool contains(const Generator& X) const { return comps_.count(X) != 0; }

    const MoyalElement& component(const Generator& X) const
    {
        auto it = comps_.find(X);
        if (it == comps_.end()) throw DomainError("generator " + X.name() + " is not in the basis");
        return it->second;
    }

    ConnectionForm& set(const Generator& X, MoyalElement value)
    {
        auto it = comps_.find(X);
        if (it == comps_.end()) throw DomainError("generator " + X.name() + " is not in the basis");
        require_same(value, it->second);
        it->second = std::move(value);
        return *this;
    }

    /// A(X)^dagger = A(X) for every basis generator, within tol.
    bool is_hermitian(double tol) const
    {
        for (const auto& [X, a] : comps_)
            if (!approx_equal(a.adjoint(), a, tol)) return false;
        return true;
    }

    const std::map<Generator, MoyalElement>& components() const noexcept { return comps_; }

private:
    DerivationAlgebra alg_;
    BasisKind basis_kind_;
    double mu_;
    double alpha_;
    std::map<Generator, MoyalElement> comps_;
};

inline void require_basis(const ConnectionForm& A, const Generator& X)
{
    if (!A.contains(X)) throw DomainError("generator " + X.name() + " is not in the basis");
}

/// Gauge-invariant connection: -a * eta(X).
inline MoyalElement canonical_connection(const ConnectionForm& A, const Generator& X,
                                         const MoyalElement& a)
{
    require_basis(A, X);
    return -star(a, A.algebra().eta(X));
}

/// Full connection: X(a) - i A(X) * a.
inline MoyalElement connection_apply(const ConnectionForm& A, const Generator& X,
                                     const MoyalElement& a)
{
    require_basis(A, X);
    return A.algebra().apply(X, a) - star(A.component(X), a) * I;
}

/// Curly-A(X) = -i A(X) + eta(X).
inline CovariantCoordinates covariant_coordinates(const ConnectionForm& A)
{
    CovariantCoordinates out;
    for (const auto& X : A.basis()) out.emplace(X, A.component(X) * (-I) + A.algebra().eta(X));
    return out;
}

namespace detail {

inline MoyalElement lookup(const CovariantCoordinates& cc, const Generator& X)
{
    auto it = cc.find(X);
    if (it == cc.end()) throw DomainError("missing covariant coordinate " + X.name());
    return it->second;
}

/// Curvature entry from the closed forms for one ordered pair.
inline MoyalElement closed_entry(const ConnectionForm& A, const CovariantCoordinates& cc,
                                 const Generator& X, const Generator& Y)
{
    using K = Generator::Kind;
    const auto& s = *A.structure();
    const double sc = A.algebra().sym_scale();
    const auto cA = [&](const Generator& g) { return lookup(cc, g); };

    if (X.kind == K::Partial && Y.kind == K::Partial)
        return commutator(cA(X), cA(Y)) - I * s.ThetaInv(X.mu, Y.mu);

    if (X.kind == K::Sym && Y.kind == K::Partial) return -closed_entry(A, cc, Y, X);

    if (X.kind == K::Partial && Y.kind == K::Sym) {
        const int m = X.mu, r = Y.mu, g = Y.nu;
        return commutator(cA(X), cA(Y)) -
               (cA(Generator::partial(g)) * s.ThetaInv(m, r) +
                cA(Generator::partial(r)) * s.ThetaInv(m, g)) *
                   sc;
    }

    const int m = X.mu, n = X.nu, r = Y.mu, g = Y.nu;
    return commutator(cA(X), cA(Y)) +
           (cA(Generator::sym(m, g)) * s.ThetaInv(r, n) + cA(Generator::sym(m, r)) * s.ThetaInv(g, n) +
            cA(Generator::sym(n, g)) * s.ThetaInv(r, m) + cA(Generator::sym(n, r)) * s.ThetaInv(g, m)) *
               sc;
}

}  // namespace detail

/// All ordered basis pairs from the closed-form component formulas.
inline CurvatureTable curvature(const ConnectionForm& A)
{
    const auto cc = covariant_coordinates(A);
    CurvatureTable out;
    for (const auto& X : A.basis())
        for (const auto& Y : A.basis()) out.emplace(std::pair{X, Y}, detail::closed_entry(A, cc, X, Y));
    return out;
}

/**
 * All ordered basis pairs from
 * F(X,Y) = ([A(X), A(Y)] - A([X,Y])) - ([eta(X), eta(Y)] - eta([X,Y]))
 * with curly-A in place of A and [X,Y] taken from the projected eta brackets.
 */
inline CurvatureTable curvature_generic(const ConnectionForm& A)
{
    const auto cc = covariant_coordinates(A);
    const auto& alg = A.algebra();
    CurvatureTable out;
    for (const auto& X : A.basis())
        for (const auto& Y : A.basis()) {
            const auto eX = alg.eta(X), eY = alg.eta(Y);
            const MoyalElement eta_bracket = commutator(eX, eY);
            const GeneratorCombination comb = alg.project(eta_bracket);
            MoyalElement cA_of_bracket(A.structure());
            for (const auto& [Z, c] : comb.coeffs) cA_of_bracket += detail::lookup(cc, Z) * c;
            const MoyalElement central_part = eta_bracket - alg.assemble_noncentral(comb);
            out.emplace(std::pair{X, Y},
                        commutator(detail::lookup(cc, X), detail::lookup(cc, Y)) - cA_of_bracket - central_part);
        }
    return out;
}

/// eta([X,Y]) - [eta(X), eta(Y)] for all ordered basis pairs; every entry is central.
inline CurvatureTable canonical_curvature(const ConnectionForm& A)
{
    const auto& alg = A.algebra();
    CurvatureTable out;
    for (const auto& X : A.basis())
        for (const auto& Y : A.basis()) {
            const MoyalElement br = commutator(alg.eta(X), alg.eta(Y));
            out.emplace(std::pair{X, Y}, alg.assemble_noncentral(alg.project(br)) - br);
        }
    return out;
}

/// D^A_mu curly-A_(rho sigma) = d_mu curly-A_(rho sigma) - i [A_mu, curly-A_(rho sigma)].
inline MoyalElement covariant_derivative(const ConnectionForm& A, int mu, int rho, int sigma)
{
    const Generator target = Generator::sym(rho, sigma);
    require_basis(A, Generator::partial(mu));
    require_basis(A, target);
    const MoyalElement cA = A.component(target) * (-I) + A.algebra().eta(target);
    return cA.partial(mu) - commutator(A.component(Generator::partial(mu)), cA) * I;
}

/// A^g(X) = g^dagger * A(X) * g + i g^dagger * X(g), for unitary g.
inline ConnectionForm gauge_transform(const ConnectionForm& A, const MoyalElement& g)
{
    require_same(g, MoyalElement(A.structure()));
    if (!is_unitary(g, kUnitaryTolerance)) throw DomainError("gauge element is not unitary");
    const MoyalElement gd = g.adjoint();
    ConnectionForm out = A;
    for (const auto& X : A.basis())
        out.set(X, star(gd, A.component(X), g) + star(gd, A.algebra().apply(X, g)) * I);
    return out;
}

/// g^dagger * a * g.
inline MoyalElement conjugate(const MoyalElement& a, const MoyalElement& g)
{
    return star(g.adjoint(), a, g);
}

/**
 * Integrand of the rescaled Yang-Mills-Higgs action, scaled by -1/alpha^2.
 * Indices run over all values, so an off-diagonal Sym pair appears twice.
 */
inline MoyalElement action_density(const ConnectionForm& A)
{
    const auto F = curvature(A);
    const int d = A.structure()->dimension();
    // Sym generators are stored once per unordered index pair, so each square is
    // weighted by the number of index orderings that reach it.
    std::map<std::pair<Generator, Generator>, double> weight;
    for (int m = 1; m <= d; ++m)
        for (int n = 1; n <= d; ++n) weight[{Generator::partial(m), Generator::partial(n)}] += 1.0;
    if (A.basis_kind() == BasisKind::G2) {
        for (int m = 1; m <= d; ++m)
            for (int r = 1; r <= d; ++r)
                for (int g = 1; g <= d; ++g) weight[{Generator::partial(m), Generator::sym(r, g)}] += 1.0;
        for (int m = 1; m <= d; ++m)
            for (int n = 1; n <= d; ++n)
                for (int r = 1; r <= d; ++r)
                    for (int g = 1; g <= d; ++g) weight[{Generator::sym(m, n), Generator::sym(r, g)}] += 1.0;
    }
    MoyalElement sum(A.structure());
    for (const auto& [XY, w] : weight) {
        const auto& f = F.at(XY);
        sum += star(f, f) * w;
    }
    return sum * (-1.0 / (A.alpha() * A.alpha()));
}

/// Mixed-sector part of the density (the F_{mu(rho sigma)} squares only), scaled by -1/alpha^2.
inline MoyalElement action_density_mixed(const ConnectionForm& A)
{
    if (A.basis_kind() != BasisKind::G2) throw DomainError("the mixed sector needs the G2 basis");
    const auto F = curvature(A);
    const int d = A.structure()->dimension();
    MoyalElement sum(A.structure());
    for (int m = 1; m <= d; ++m)
        for (int r = 1; r <= d; ++r)
            for (int g = r; g <= d; ++g) {
                const auto& f = F.at({Generator::partial(m), Generator::sym(r, g)});
                sum += star(f, f) * (r == g ? 1.0 : 2.0);
            }
    return sum * (-1.0 / (A.alpha() * A.alpha()));
}

}  // namespace moyal
