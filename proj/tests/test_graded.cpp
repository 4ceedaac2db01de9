#include "catch_amalgamated.hpp"

#include "moyal/graded.hpp"
#include "moyal/random.hpp"
#include "moyal/verify.hpp"

using namespace moyal;
using GG = GradedGenerator;

namespace {

bool close(const GradedElement& a, const GradedElement& b, double tol = 1e-12) { return graded_distance(a, b) <= tol; }
bool close(const MoyalElement& a, const MoyalElement& b, double tol = 1e-12) { return relative_distance(a, b) <= tol; }

GradedElement random_graded(ElementGenerator& gen, const StructurePtr& s) { return {gen.element(s), gen.element(s)}; }

}  // namespace

TEST_CASE("graded product and involution", "[graded]")
{
    ElementGenerator gen(12);
    const auto s = make_structure(2, 0.9);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_graded(gen, s), b = random_graded(gen, s), c = random_graded(gen, s);
        CHECK(close(graded_product(graded_product(a, b), c), graded_product(a, graded_product(b, c)), 1e-10));
        CHECK(close(graded_product(a, GradedElement::unit(s)), a, 0.0));

        const auto ab = graded_product(a, b);
        CHECK(close(ab.even, star(a.even, b.even) + star(a.odd, b.odd), 0.0));
        CHECK(close(ab.odd, star(a.even, b.odd) + star(a.odd, b.even), 0.0));

        // (ab)^dagger = (-1)^{|a||b|} b^dagger a^dagger on homogeneous elements.
        const auto ao = GradedElement::make_odd(a.odd), bo = GradedElement::make_odd(b.odd);
        const auto ae = GradedElement::make_even(a.even);
        CHECK(close(graded_product(ao, bo).adjoint(), -graded_product(bo.adjoint(), ao.adjoint()), 1e-12));
        CHECK(close(graded_product(ae, bo).adjoint(), graded_product(bo.adjoint(), ae.adjoint()), 1e-12));
    }
    const auto x = GradedElement(coordinate(s, 1), coordinate(s, 2) * I);
    CHECK(x.adjoint().odd == coordinate(s, 2));
    CHECK(x.degree() == -1);
}

TEST_CASE("graded generator representatives", "[graded]")
{
    const auto s = make_structure(2, 1.0);
    const GradedAlgebra alg(s);
    const DerivationAlgebra base(s);
    CHECK(alg.eta(GG::T(1)) == GradedElement::make_even(base.eta(Generator::partial(1))));
    CHECK(alg.eta(GG::U(2)) == GradedElement::make_odd(base.eta(Generator::partial(2))));
    CHECK(alg.eta(GG::M(2, 1)) == GradedElement::make_even(base.eta(Generator::sym(1, 2))));
    CHECK(alg.eta(GG::J()) == GradedElement::make_odd(MoyalElement::constant(s, I)));
    CHECK(alg.generators().size() == 2 + 2 + 3 + 1);
    CHECK(GG::U(1).parity() == 1);
    CHECK(GG::M(1, 2).parity() == 0);
    CHECK_THROWS_AS(alg.eta(GG::T(3)), IndexError);
    CHECK_THROWS_AS(alg.eta(GG{static_cast<GG::Kind>(9), 1, 1}), DomainError);
}

TEST_CASE("graded bracket relations", "[graded]")
{
    for (double th : {1.0, 0.5}) {
        const auto s = make_structure(2, th);
        const GradedAlgebra alg(s);
        const auto e = [&](const GG& X) { return alg.eta(X); };
        const auto unit = GradedElement::unit(s);

        CHECK(close(graded_bracket(e(GG::J()), e(GG::J())), unit * -2.0, 1e-15));
        CHECK(close(graded_bracket(e(GG::U(1)), e(GG::U(2))), e(GG::M(1, 2)) * (2.0 * I), 1e-13));
        CHECK(close(graded_bracket(e(GG::U(1)), e(GG::U(1))), e(GG::M(1, 1)) * (2.0 * I), 1e-13));
        CHECK(close(graded_bracket(e(GG::T(1)), e(GG::U(2))), e(GG::J()) * s->ThetaInv(1, 2), 1e-13));
        CHECK(close(graded_bracket(e(GG::M(1, 2)), e(GG::J())), GradedElement::zero(s), 1e-15));
        CHECK(close(graded_bracket(e(GG::U(2)), e(GG::J())), e(GG::T(2)) * (2.0 * I), 1e-13));
        CHECK(close(graded_bracket(e(GG::T(1)), e(GG::T(2))), unit * (I * s->ThetaInv(1, 2)), 1e-13));
        for (int m = 1; m <= 2; ++m)
            for (int n = m; n <= 2; ++n)
                for (int r = 1; r <= 2; ++r)
                    CHECK(close(graded_bracket(e(GG::M(m, n)), e(GG::T(r))),
                                e(GG::T(m)) * s->ThetaInv(n, r) + e(GG::T(n)) * s->ThetaInv(m, r), 1e-13));
    }

    for (int D : {2, 4}) {
        const GradedAlgebra alg(make_structure(D, 0.8));
        for (const auto& X : alg.generators())
            for (const auto& Y : alg.generators())
                CHECK(close(graded_bracket(alg.eta(X), alg.eta(Y)), table_graded_bracket(alg, X, Y), 1e-12));
    }
}

TEST_CASE("graded curvature special values", "[graded]")
{
    const auto s = make_structure(2, 1.0);

    SECTION("zero connection gives F(J, J) = 0")
    {
        const auto A = GradedConnectionForm::unscaled(s);
        CHECK(graded_curvature(A).at({GG::J(), GG::J()}).norm() < 1e-14);
    }

    SECTION("F(T_mu, U_nu) on the action slice")
    {
        ElementGenerator gen(40);
        const auto A = gen.graded_action_connection(s, 1.0 / s->theta(), 1.0 / s->theta());
        const auto table = graded_curvature(A);
        const auto& phi = A.component(GG::J());
        for (int m = 1; m <= 2; ++m)
            for (int n = 1; n <= 2; ++n) {
                const auto& am = A.component(GG::T(m));
                const auto& an = A.component(GG::T(n));
                const auto Fmn = (an.partial(m) - am.partial(n) - commutator(am, an) * I);
                const auto& F = table.at({GG::T(m), GG::U(n)});
                CHECK(F.even.norm() < 1e-12);
                CHECK(close(F.odd, (phi * s->ThetaInv(m, n) - Fmn) * I, 1e-11));
            }
    }

    SECTION("canonical entries are central")
    {
        const GradedAlgebra alg(s);
        for (const auto& [XY, F] : graded_canonical_curvature(alg)) {
            CHECK(F.even.degree() <= 0);
            CHECK(F.odd.degree() <= 0);
        }
    }

    SECTION("both computations agree and respect graded symmetry")
    {
        ElementGenerator gen(41);
        for (int trial = 0; trial < 3; ++trial) {
            const auto A = gen.graded_connection(s, 0.7, 1.2, 1.0);
            const auto closed = graded_curvature(A), generic = graded_curvature_generic(A);
            for (const auto& [XY, F] : closed) {
                CHECK(close(F, generic.at(XY), 1e-11));
                const double sign = (XY.first.parity() == 1 && XY.second.parity() == 1) ? 1.0 : -1.0;
                CHECK(close(closed.at({XY.second, XY.first}), F * sign, 1e-11));
            }
        }
    }
}

TEST_CASE("graded gauge transformations", "[graded]")
{
    const auto s = make_structure(2, 1.0);
    ElementGenerator gen(42);
    const auto A = gen.graded_connection(s);
    const auto g0 = MoyalElement::plane_wave(s, {0.25, 0.5});
    const auto g = GradedElement::make_even(g0);

    const auto same = graded_gauge_transform(A, GradedElement::unit(s));
    for (const auto& X : A.generators()) CHECK(same.component(X) == A.component(X));

    const auto B = graded_gauge_transform(A, g);
    CHECK(close(B.component(GG::J()), star(g0.adjoint(), A.component(GG::J()), g0), 1e-14));
    const auto F = graded_curvature(A), Fg = graded_curvature(B);
    for (const auto& [XY, f] : F) CHECK(close(Fg.at(XY), graded_conjugate(f, g), 1e-10));

    CHECK_THROWS_AS(graded_gauge_transform(A, GradedElement::make_odd(g0)), DomainError);
    CHECK_THROWS_AS(graded_gauge_transform(A, GradedElement::make_even(g0 * 2.0)), DomainError);
}

TEST_CASE("graded action density", "[graded]")
{
    const double m = 0.8, th = 1.25;
    const auto s = make_structure(2, th);
    GradedConnectionForm A(s, m, 1.0, 2.0);
    const double sc = A.algebra().m_scale();
    for (int a = 1; a <= 2; ++a)
        for (int b = a; b <= 2; ++b) A.set(GG::M(a, b), pointwise(xi(s, a), xi(s, b)) * sc);

    SECTION("flat background")
    {
        const auto d = graded_action_density(A);
        CHECK(d.yang_mills.norm() < 1e-14);
        // {xi_mu, xi_nu}^2 = (2 xi_mu xi_nu)^2 at A = 0.
        MoyalElement harmonic(s);
        for (int a = 1; a <= 2; ++a)
            for (int b = 1; b <= 2; ++b) {
                const auto two = pointwise(xi(s, a), xi(s, b)) * 2.0;
                harmonic += star(two, two);
            }
        CHECK(close(d.anticommutator, harmonic, 1e-13));
    }

    SECTION("constant phi")
    {
        const double c = 0.7;
        A.set(GG::J(), MoyalElement::constant(s, c));
        const auto d = graded_action_density(A);
        const double mt = m * th;
        const double want = 4 * c * c * c * c - 8.0 / mt * c * c * c + 16.0 / (mt * mt) * c * c;
        CHECK(close(d.potential, MoyalElement::constant(s, want), 1e-14));
        CHECK(close(d.total, (d.yang_mills + d.anticommutator + d.slavnov + d.covariant_kinetic + d.potential) * 0.25,
                    1e-14));
    }

    SECTION("off the slice")
    {
        A.set(GG::U(1), coordinate(s, 1));
        CHECK_THROWS_AS(graded_action_density(A), DomainError);
        CHECK_THROWS_AS(graded_action_density(GradedConnectionForm(s, m)), DomainError);
    }
}

TEST_CASE("graded suite", "[graded][verify]")
{
    VerifyOptions o;
    o.samples = 10;
    for (const auto& c : verify_graded(o)) {
        INFO(c.name << " measured " << c.measured << " limit " << c.threshold);
        CHECK(c.passed());
    }
}
