#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "moyal/connections.hpp"

namespace moyal {

/// Element (a0, a1) of the Z2-graded algebra built from two copies of the Moyal algebra.
struct GradedElement {
    MoyalElement even;
    MoyalElement odd;

    GradedElement(MoyalElement e, MoyalElement o) : even(std::move(e)), odd(std::move(o))
    {
        require_same(even, odd);
    }

    static GradedElement zero(const StructurePtr& s) { return {MoyalElement(s), MoyalElement(s)}; }
    static GradedElement unit(const StructurePtr& s) { return {MoyalElement::unit(s), MoyalElement(s)}; }
    static GradedElement make_even(MoyalElement e)
    {
        auto s = e.structure();
        return {std::move(e), MoyalElement(s)};
    }
    static GradedElement make_odd(MoyalElement o)
    {
        auto s = o.structure();
        return {MoyalElement(s), std::move(o)};
    }

    const StructurePtr& structure() const noexcept { return even.structure(); }

    /// 0 for even, 1 for odd, -1 for a mixed (inhomogeneous) element; zero counts as even.
    int degree() const
    {
        if (odd.is_zero()) return 0;
        if (even.is_zero()) return 1;
        return -1;
    }

    double norm() const { return std::max(even.norm(), odd.norm()); }

    /// (a0^dagger, i a1^dagger).
    GradedElement adjoint() const { return {even.adjoint(), odd.adjoint() * I}; }

    GradedElement& operator+=(const GradedElement& o)
    {
        even += o.even;
        odd += o.odd;
        return *this;
    }
    GradedElement& operator-=(const GradedElement& o)
    {
        even -= o.even;
        odd -= o.odd;
        return *this;
    }
    friend bool operator==(const GradedElement&, const GradedElement&) = default;
    friend GradedElement operator+(GradedElement a, const GradedElement& b) { return a += b; }
    friend GradedElement operator-(GradedElement a, const GradedElement& b) { return a -= b; }
    friend GradedElement operator-(const GradedElement& a) { return {-a.even, -a.odd}; }
    friend GradedElement operator*(const GradedElement& a, Complex c) { return {a.even * c, a.odd * c}; }
    friend GradedElement operator*(Complex c, const GradedElement& a) { return a * c; }
    friend GradedElement operator*(const GradedElement& a, double c) { return a * Complex(c); }
    friend GradedElement operator*(double c, const GradedElement& a) { return a * Complex(c); }
};

/// (a0*b0 + a1*b1, a0*b1 + a1*b0).
inline GradedElement graded_product(const GradedElement& a, const GradedElement& b)
{
    return {star(a.even, b.even) + star(a.odd, b.odd), star(a.even, b.odd) + star(a.odd, b.even)};
}

template <class... Rest>
GradedElement graded_product(const GradedElement& a, const GradedElement& b, const Rest&... rest)
{
    return graded_product(graded_product(a, b), rest...);
}

/// ([a0,b0] + {a1,b1}, [a0,b1] + [a1,b0]).
inline GradedElement graded_bracket(const GradedElement& a, const GradedElement& b)
{
    return {commutator(a.even, b.even) + anticommutator(a.odd, b.odd),
            commutator(a.even, b.odd) + commutator(a.odd, b.even)};
}

inline double graded_distance(const GradedElement& a, const GradedElement& b)
{
    return std::max(relative_distance(a.even, b.even), relative_distance(a.odd, b.odd));
}

inline bool approx_equal(const GradedElement& a, const GradedElement& b, double tol)
{
    return approx_equal(a.even, b.even, tol) && approx_equal(a.odd, b.odd, tol);
}

/// T_mu, U_mu, M_(mu nu) (mu <= nu) or J.
struct GradedGenerator {
    enum class Kind { T, U, M, J };

    Kind kind = Kind::T;
    int mu = 0;
    int nu = 0;

    static GradedGenerator T(int mu) { return {Kind::T, mu, 0}; }
    static GradedGenerator U(int mu) { return {Kind::U, mu, 0}; }
    static GradedGenerator M(int mu, int nu)
    {
        if (mu > nu) std::swap(mu, nu);
        return {Kind::M, mu, nu};
    }
    static GradedGenerator J() { return {Kind::J, 0, 0}; }

    int parity() const { return (kind == Kind::U || kind == Kind::J) ? 1 : 0; }

    std::string name() const
    {
        switch (kind) {
        case Kind::T: return "T" + std::to_string(mu);
        case Kind::U: return "U" + std::to_string(mu);
        case Kind::M: return "M" + std::to_string(mu) + std::to_string(nu);
        case Kind::J: return "J";
        }
        return "?";
    }

    auto operator<=>(const GradedGenerator&) const = default;
};

struct GradedCombination {
    Complex central{};
    std::map<GradedGenerator, Complex> coeffs;
};

/**
 * Generators, eta map and bracket projection of the graded calculus.
 *
 * `j_scale` multiplies the odd constant of eta(Ad_J) and `m_scale` the
 * quadratic eta of Ad_M. The plain algebra has both equal to 1; the
 * dimensionful gauge theory uses j = 1/(m theta) and m_scale = mu theta.
 */
class GradedAlgebra {
public:
    GradedAlgebra(StructurePtr s, double j_scale = 1.0, double m_scale = 1.0)
        : base_(std::move(s), m_scale), j_(j_scale)
    {
        if (!(j_scale > 0.0)) throw DomainError("j_scale must be positive");
    }

    const StructurePtr& structure() const noexcept { return base_.structure(); }
    double j_scale() const noexcept { return j_; }
    double m_scale() const noexcept { return base_.sym_scale(); }

    std::vector<GradedGenerator> generators() const
    {
        const int d = structure()->dimension();
        std::vector<GradedGenerator> out;
        for (int m = 1; m <= d; ++m) out.push_back(GradedGenerator::T(m));
        for (int m = 1; m <= d; ++m) out.push_back(GradedGenerator::U(m));
        for (int m = 1; m <= d; ++m)
            for (int n = m; n <= d; ++n) out.push_back(GradedGenerator::M(m, n));
        out.push_back(GradedGenerator::J());
        return out;
    }

    void check(const GradedGenerator& X) const
    {
        const auto& s = *structure();
        switch (X.kind) {
        case GradedGenerator::Kind::T:
        case GradedGenerator::Kind::U: s.check_index(X.mu); break;
        case GradedGenerator::Kind::M:
            s.check_index(X.mu);
            s.check_index(X.nu);
            break;
        case GradedGenerator::Kind::J: break;
        default: throw DomainError("unknown graded generator kind");
        }
    }

    GradedElement eta(const GradedGenerator& X) const
    {
        check(X);
        const auto& s = structure();
        switch (X.kind) {
        case GradedGenerator::Kind::T: return GradedElement::make_even(base_.eta(Generator::partial(X.mu)));
        case GradedGenerator::Kind::U: return GradedElement::make_odd(base_.eta(Generator::partial(X.mu)));
        case GradedGenerator::Kind::M:
            return GradedElement::make_even(base_.eta(Generator::sym(X.mu, X.nu)));
        case GradedGenerator::Kind::J: return GradedElement::make_odd(MoyalElement::constant(s, I * j_));
        }
        throw DomainError("unknown graded generator kind");
    }

    /// Ad_{eta(X)}(a) with the graded bracket.
    GradedElement apply(const GradedGenerator& X, const GradedElement& a) const
    {
        return graded_bracket(eta(X), a);
    }

    /// Decomposition in {unit, T, U, M, J}; throws when outside that span.
    GradedCombination project(const GradedElement& a) const
    {
        GradedCombination out;
        const GeneratorCombination ev = base_.project(a.even);
        out.central = ev.central;
        for (const auto& [g, c] : ev.coeffs)
            out.coeffs[g.kind == Generator::Kind::Partial ? GradedGenerator::T(g.mu)
                                                          : GradedGenerator::M(g.mu, g.nu)] += c;
        if (a.odd.degree() > 1) throw DomainError("odd part outside the span of U and J");
        const Complex c0 = a.odd.constant_term();
        if (c0 != Complex{}) out.coeffs[GradedGenerator::J()] += c0 / (I * j_);
        const GeneratorCombination od = base_.project(a.odd - c0);
        for (const auto& [g, c] : od.coeffs) out.coeffs[GradedGenerator::U(g.mu)] += c;
        return out;
    }

    GradedElement assemble(const GradedCombination& comb) const
    {
        GradedElement out = GradedElement::unit(structure()) * comb.central;
        for (const auto& [g, c] : comb.coeffs) out += eta(g) * c;
        return out;
    }

    GradedCombination bracket_generators(const GradedGenerator& X, const GradedGenerator& Y) const
    {
        return project(graded_bracket(eta(X), eta(Y)));
    }

    const DerivationAlgebra& base() const noexcept { return base_; }

private:
    DerivationAlgebra base_;
    double j_;
};

/**
 * Connection 1-form on the graded algebra in the rescaled convention:
 * A(Ad_T) = (A0, 0), A(Ad_U) = (0, A1), A(Ad_M) = (G0, 0), A(Ad_J) = (0, phi).
 */
class GradedConnectionForm {
public:
    GradedConnectionForm(StructurePtr s, double m = 1.0, double mu = 1.0, double alpha = 1.0)
        : alg_(s, 1.0 / (m * s->theta()), mu * s->theta()), m_(m), mu_(mu), alpha_(alpha)
    {
        if (!(m > 0.0) || !(mu > 0.0) || !(alpha > 0.0))
            throw DomainError("m, mu and alpha must be positive");
        for (const auto& X : alg_.generators()) comps_.emplace(X, MoyalElement(s));
    }

    /// Variant with j = m_scale = 1 (m = mu = 1/theta), the normalization of the bare tables.
    static GradedConnectionForm unscaled(const StructurePtr& s, double alpha = 1.0)
    {
        return GradedConnectionForm(s, 1.0 / s->theta(), 1.0 / s->theta(), alpha);
    }

    const GradedAlgebra& algebra() const noexcept { return alg_; }
    const StructurePtr& structure() const noexcept { return alg_.structure(); }
    std::vector<GradedGenerator> generators() const { return alg_.generators(); }
    double m() const noexcept { return m_; }
    double mu() const noexcept { return mu_; }
    double alpha() const noexcept { return alpha_; }

    const MoyalElement& component(const GradedGenerator& X) const
    {
        auto it = comps_.find(X);
        if (it == comps_.end()) throw DomainError("unknown graded generator " + X.name());
        return it->second;
    }

    GradedConnectionForm& set(const GradedGenerator& X, MoyalElement value)
    {
        auto it = comps_.find(X);
        if (it == comps_.end()) throw DomainError("unknown graded generator " + X.name());
        require_same(value, it->second);
        it->second = std::move(value);
        return *this;
    }

    /// A(X) as a graded element, placed in the parity of X.
    GradedElement form(const GradedGenerator& X) const
    {
        const auto& c = component(X);
        return X.parity() == 0 ? GradedElement::make_even(c) : GradedElement::make_odd(c);
    }

    const std::map<GradedGenerator, MoyalElement>& components() const noexcept { return comps_; }

private:
    GradedAlgebra alg_;
    double m_;
    double mu_;
    double alpha_;
    std::map<GradedGenerator, MoyalElement> comps_;
};

using GradedCoordinates = std::map<GradedGenerator, GradedElement>;
using GradedCurvatureTable = std::map<std::pair<GradedGenerator, GradedGenerator>, GradedElement>;

/// Curly-A(X) = -i A(X) + eta(X).
inline GradedCoordinates graded_covariant_coordinates(const GradedConnectionForm& A)
{
    GradedCoordinates out;
    for (const auto& X : A.generators()) out.emplace(X, A.form(X) * (-I) + A.algebra().eta(X));
    return out;
}

/// Field-like covariant components: curly-A0, curly-A1, curly-G0 and Phi (without the -i).
struct GradedFields {
    std::map<int, MoyalElement> a0;
    std::map<int, MoyalElement> a1;
    std::map<std::pair<int, int>, MoyalElement> g0;
    MoyalElement phi;
};

inline GradedFields graded_fields(const GradedConnectionForm& A)
{
    const auto cc = graded_covariant_coordinates(A);
    GradedFields f{{}, {}, {}, MoyalElement(A.structure())};
    for (const auto& [X, v] : cc) {
        switch (X.kind) {
        case GradedGenerator::Kind::T: f.a0.emplace(X.mu, v.even * I); break;
        case GradedGenerator::Kind::U: f.a1.emplace(X.mu, v.odd * I); break;
        case GradedGenerator::Kind::M: f.g0.emplace(std::pair{X.mu, X.nu}, v.even * I); break;
        case GradedGenerator::Kind::J: f.phi = v.odd * I; break;
        }
    }
    return f;
}

namespace detail {

inline GradedElement closed_graded_entry(const GradedConnectionForm& A, const GradedFields& f,
                                         const GradedGenerator& X, const GradedGenerator& Y)
{
    using K = GradedGenerator::Kind;
    const auto& s = *A.structure();
    const double j = A.algebra().j_scale();
    const double sc = A.algebra().m_scale();
    const auto g0 = [&](int a, int b) { return f.g0.at({std::min(a, b), std::max(a, b)}); };
    const auto ev = [](MoyalElement e) { return GradedElement::make_even(std::move(e)); };
    const auto od = [](MoyalElement o) { return GradedElement::make_odd(std::move(o)); };

    // Families not stored in canonical order follow from F(Y,X) = -(-1)^{|X||Y|} F(X,Y).
    static constexpr std::pair<K, K> kCanonical[] = {
        {K::T, K::T}, {K::U, K::U}, {K::J, K::J}, {K::T, K::J}, {K::U, K::J},
        {K::M, K::J}, {K::T, K::U}, {K::M, K::T}, {K::M, K::U}, {K::M, K::M}};
    const bool canonical = std::find(std::begin(kCanonical), std::end(kCanonical),
                                     std::pair{X.kind, Y.kind}) != std::end(kCanonical);
    if (!canonical) {
        const double sign = (X.parity() * Y.parity() == 1) ? 1.0 : -1.0;
        return closed_graded_entry(A, f, Y, X) * sign;
    }

    if (X.kind == K::T && Y.kind == K::T)
        return ev(-commutator(f.a0.at(X.mu), f.a0.at(Y.mu)) - I * s.ThetaInv(X.mu, Y.mu));
    if (X.kind == K::U && Y.kind == K::U)
        return ev(-anticommutator(f.a1.at(X.mu), f.a1.at(Y.mu)) - g0(X.mu, Y.mu) * (2.0 / sc));
    if (X.kind == K::J && Y.kind == K::J) return ev(star(f.phi, f.phi) * (-2.0) + Complex(2.0 * j * j));
    if (X.kind == K::T && Y.kind == K::J) return od(-commutator(f.a0.at(X.mu), f.phi));
    if (X.kind == K::U && Y.kind == K::J)
        return ev(-anticommutator(f.a1.at(X.mu), f.phi) - f.a0.at(X.mu) * (2.0 * j));
    if (X.kind == K::M && Y.kind == K::J) return od(-commutator(g0(X.mu, X.nu), f.phi));
    if (X.kind == K::T && Y.kind == K::U)
        return od(-commutator(f.a0.at(X.mu), f.a1.at(Y.mu)) + f.phi * (I * s.ThetaInv(X.mu, Y.mu) / j));
    if (X.kind == K::M && (Y.kind == K::T || Y.kind == K::U)) {
        const auto& fld = Y.kind == K::T ? f.a0 : f.a1;
        const int m = X.mu, n = X.nu, r = Y.mu;
        MoyalElement v = -commutator(g0(m, n), fld.at(r)) +
                         (fld.at(m) * s.ThetaInv(n, r) + fld.at(n) * s.ThetaInv(m, r)) * (I * sc);
        return Y.kind == K::T ? ev(std::move(v)) : od(std::move(v));
    }
    if (X.kind == K::M && Y.kind == K::M) {
        const int m = X.mu, n = X.nu, r = Y.mu, g = Y.nu;
        return ev(-commutator(g0(m, n), g0(r, g)) +
                  (g0(m, r) * s.ThetaInv(n, g) + g0(m, g) * s.ThetaInv(n, r) + g0(n, r) * s.ThetaInv(m, g) +
                   g0(n, g) * s.ThetaInv(m, r)) *
                      (I * sc));
    }
    throw DomainError("no closed form for the pair " + X.name() + ", " + Y.name());
}

}  // namespace detail

/// Curvature over all ordered generator pairs from the closed component formulas.
inline GradedCurvatureTable graded_curvature(const GradedConnectionForm& A)
{
    const auto f = graded_fields(A);
    GradedCurvatureTable out;
    for (const auto& X : A.generators())
        for (const auto& Y : A.generators())
            out.emplace(std::pair{X, Y}, detail::closed_graded_entry(A, f, X, Y));
    return out;
}

/**
 * Curvature from F(X,Y) = [A(X), A(Y)] - A([X,Y]) + (eta([X,Y]) - [eta(X), eta(Y)]),
 * with curly-A in place of A and graded brackets throughout.
 */
inline GradedCurvatureTable graded_curvature_generic(const GradedConnectionForm& A)
{
    const auto cc = graded_covariant_coordinates(A);
    const auto& alg = A.algebra();
    GradedCurvatureTable out;
    for (const auto& X : A.generators())
        for (const auto& Y : A.generators()) {
            const GradedElement br = graded_bracket(alg.eta(X), alg.eta(Y));
            GradedCombination comb = alg.project(br);
            GradedElement cA_br = GradedElement::zero(A.structure());
            for (const auto& [Z, c] : comb.coeffs) cA_br += cc.at(Z) * c;
            comb.central = 0.0;
            const GradedElement eta_br = alg.assemble(comb);
            out.emplace(std::pair{X, Y}, graded_bracket(cc.at(X), cc.at(Y)) - cA_br + (eta_br - br));
        }
    return out;
}

/// eta([X,Y]) - [eta(X), eta(Y)] for all ordered pairs; every entry is a multiple of the unit.
inline GradedCurvatureTable graded_canonical_curvature(const GradedAlgebra& alg)
{
    GradedCurvatureTable out;
    for (const auto& X : alg.generators())
        for (const auto& Y : alg.generators()) {
            const GradedElement br = graded_bracket(alg.eta(X), alg.eta(Y));
            GradedCombination comb = alg.project(br);
            comb.central = 0.0;
            out.emplace(std::pair{X, Y}, alg.assemble(comb) - br);
        }
    return out;
}

/// Gauge transform by g = (g0, 0) with g0 unitary.
inline GradedConnectionForm graded_gauge_transform(const GradedConnectionForm& A, const GradedElement& g)
{
    if (!g.odd.is_zero()) throw DomainError("graded gauge elements must have zero odd part");
    if (!is_unitary(g.even, kUnitaryTolerance)) throw DomainError("gauge element is not unitary");
    const GradedElement gd = g.adjoint();
    GradedConnectionForm out = A;
    for (const auto& X : A.generators()) {
        const GradedElement v =
            graded_product(gd, A.form(X), g) + graded_product(gd, A.algebra().apply(X, g)) * I;
        out.set(X, X.parity() == 0 ? v.even : v.odd);
    }
    return out;
}

inline GradedElement graded_conjugate(const GradedElement& a, const GradedElement& g)
{
    return graded_product(g.adjoint(), a, g);
}

/// The five named pieces of the restricted graded action integrand and their total.
struct GradedActionDensity {
    MoyalElement yang_mills;
    MoyalElement anticommutator;
    MoyalElement slavnov;
    MoyalElement covariant_kinetic;
    MoyalElement potential;
    /// (1/alpha^2) times the sum of the five pieces.
    MoyalElement total;
};

/**
 * Integrand of the graded action on the slice A0 = A1, curly-G0 = 0.
 *
 * Pieces, with F_{mu nu} = d_mu A_nu - d_nu A_mu - i [A_mu, A_nu] and
 * curly-A_mu = A_mu - xi_mu:
 *   yang_mills        sum F_{mu nu}^2
 *   anticommutator    sum {curly-A_mu, curly-A_nu}^2
 *   slavnov           sum (ThetaInv_{mu nu} phi - F_{mu nu})^2
 *   covariant_kinetic sum (d_mu phi - i [A_mu, phi])^2 + ({A_mu, phi} - {xi_mu, phi})^2
 *   potential         4 phi^4 - 8/(m theta) phi^3 + 16/(m theta)^2 phi^2
 * All squares and powers are star products.
 */
inline GradedActionDensity graded_action_density(const GradedConnectionForm& A, double tol = 1e-10)
{
    const auto& sp = A.structure();
    const auto& s = *sp;
    const int d = s.dimension();
    const auto f = graded_fields(A);
    for (int m = 1; m <= d; ++m)
        if (!approx_equal(A.component(GradedGenerator::T(m)), A.component(GradedGenerator::U(m)), tol))
            throw DomainError("graded action needs A0 = A1");
    for (const auto& [k, g] : f.g0)
        if (g.norm() > tol) throw DomainError("graded action needs curly-G0 = 0");

    const MoyalElement& phi = A.component(GradedGenerator::J());
    std::vector<MoyalElement> a, cal;
    for (int m = 1; m <= d; ++m) {
        a.push_back(A.component(GradedGenerator::T(m)));
        cal.push_back(a.back() - xi(sp, m));
    }
    const auto sq = [](const MoyalElement& e) { return star(e, e); };

    GradedActionDensity out{MoyalElement(sp), MoyalElement(sp), MoyalElement(sp),
                            MoyalElement(sp), MoyalElement(sp), MoyalElement(sp)};
    for (int m = 1; m <= d; ++m)
        for (int n = 1; n <= d; ++n) {
            const auto& am = a[static_cast<std::size_t>(m - 1)];
            const auto& an = a[static_cast<std::size_t>(n - 1)];
            const MoyalElement F = am.partial(n) * (-1.0) + an.partial(m) - commutator(am, an) * I;
            out.yang_mills += sq(F);
            out.anticommutator +=
                sq(anticommutator(cal[static_cast<std::size_t>(m - 1)], cal[static_cast<std::size_t>(n - 1)]));
            out.slavnov += sq(phi * s.ThetaInv(m, n) - F);
        }
    for (int m = 1; m <= d; ++m) {
        const auto& am = a[static_cast<std::size_t>(m - 1)];
        out.covariant_kinetic += sq(phi.partial(m) - commutator(am, phi) * I);
        out.covariant_kinetic += sq(anticommutator(am, phi) - anticommutator(xi(sp, m), phi));
    }
    const double mt = A.m() * s.theta();
    const MoyalElement phi2 = sq(phi);
    out.potential = star(phi2, phi2) * 4.0 - star(phi2, phi) * (8.0 / mt) + phi2 * (16.0 / (mt * mt));

    out.total = (out.yang_mills + out.anticommutator + out.slavnov + out.covariant_kinetic + out.potential) *
                (1.0 / (A.alpha() * A.alpha()));
    return out;
}

}  // namespace moyal
