#include "catch_amalgamated.hpp"

#include "moyal/derivations.hpp"
#include "moyal/random.hpp"
#include "moyal/verify.hpp"

using namespace moyal;

namespace {

MoyalElement mono(const StructurePtr& s, std::vector<int> a, Complex c = 1.0) { return MoyalElement::monomial(s, std::move(a), c); }

bool close(const MoyalElement& a, const MoyalElement& b, double tol = 1e-12) { return relative_distance(a, b) <= tol; }

}  // namespace

TEST_CASE("generator names and ordering", "[derivations]")
{
    CHECK(Generator::partial(2).name() == "d2");
    CHECK(Generator::sym(2, 1).name() == "X12");
    CHECK(Generator::sym(2, 1) == Generator::sym(1, 2));
    CHECK(Generator::partial(4) < Generator::sym(1, 1));
    const DerivationAlgebra alg(make_structure(4, 1.0));
    CHECK(alg.basis(BasisKind::G1).size() == 4);
    CHECK(alg.basis(BasisKind::G2).size() == 14);
}

TEST_CASE("action of generators", "[derivations]")
{
    const auto s = make_structure(2, 1.0);
    const DerivationAlgebra alg(s);
    CHECK(alg.apply(Generator::partial(1), mono(s, {1, 1})) == mono(s, {0, 1}));

    // Inner(x_mu x_nu)(a) = i (x_mu Theta_{nu b} + x_nu Theta_{mu b}) d_b a
    ElementGenerator gen(17);
    for (int D : {2, 4}) {
        const auto t = make_structure(D, 0.9);
        const DerivationAlgebra a4(t);
        for (int trial = 0; trial < 10; ++trial) {
            const int mu = gen.integer(1, D), nu = gen.integer(1, D);
            const auto a = gen.polynomial(t, 3, 4);
            const auto P = pointwise(coordinate(t, mu), coordinate(t, nu));
            MoyalElement rhs(t);
            for (int b = 1; b <= D; ++b) {
                const auto db = a.partial(b);
                rhs += pointwise(coordinate(t, mu), db) * (I * t->Theta(nu, b));
                rhs += pointwise(coordinate(t, nu), db) * (I * t->Theta(mu, b));
            }
            CHECK(close(a4.apply(Generator::inner(P), a), rhs, 1e-12));
        }
    }

    // Inner(x1^3) picks up the third-derivative term:
    // [x1^3, a] = 3i x1^2 Theta_{1b} d_b a + (i^3/4) Theta_{1b}Theta_{1c}Theta_{1d} d_b d_c d_d a.
    const auto a = mono(s, {0, 4}) + mono(s, {1, 3}, Complex(0.5, 1.0));
    const auto P = mono(s, {3, 0});
    const double T = s->Theta(1, 2);
    const auto d2a = a.partial(2);
    const auto expected = pointwise(mono(s, {2, 0}), d2a) * (3.0 * I * T) +
                          d2a.partial(2).partial(2) * (I * I * I * T * T * T / 4.0);
    CHECK(close(alg.apply(Generator::inner(P), a), expected, 1e-13));

    // Real generators commute with the involution.
    for (int trial = 0; trial < 10; ++trial) {
        const auto e = gen.element(s);
        for (const auto& X : alg.basis(BasisKind::G2))
            CHECK(close(alg.apply(X, e.adjoint()), alg.apply(X, e).adjoint(), 1e-12));
    }

    CHECK_THROWS_AS(alg.apply(Generator::partial(1), coordinate(make_structure(2, 2.0), 1)), StructureMismatch);
}

TEST_CASE("eta values", "[derivations]")
{
    const auto s = make_structure(2, 1.0);
    const DerivationAlgebra alg(s);
    CHECK(alg.eta(Generator::inner(mono(s, {1, 1}) + 5.0)) == mono(s, {1, 1}));
    CHECK(alg.eta(Generator::partial(1)) == xi(s, 1) * I);
    CHECK(close(alg.eta(Generator::sym(1, 1)), mono(s, {0, 2}, I), 1e-15));

    const auto t = make_structure(2, 2.0);
    CHECK(close(DerivationAlgebra(t).eta(Generator::sym(1, 1)), mono(t, {0, 2}, I / 4.0), 1e-15));

    CHECK_THROWS_AS(alg.eta(Generator::inner(mono(s, {3, 0}))), DomainError);
    CHECK_THROWS_AS(alg.eta(Generator::inner(MoyalElement::plane_wave(s, {1.0, 0.0}))), DomainError);
    CHECK_THROWS_AS(alg.eta(Generator::partial(3)), IndexError);
    CHECK(alg.eta(Generator::sym(1, 2)).constant_term() == Complex{});
}

TEST_CASE("Poisson bracket", "[derivations]")
{
    const auto s = make_structure(2, 1.0);
    const DerivationAlgebra alg(s);
    CHECK(alg.poisson_bracket(coordinate(s, 1), coordinate(s, 2)) == MoyalElement::constant(s, -1.0));

    ElementGenerator gen(4);
    for (int D : {2, 4}) {
        const auto t = make_structure(D, 1.7);
        const DerivationAlgebra a(t);
        for (int trial = 0; trial < 20; ++trial) {
            const auto p = gen.polynomial(t, 2, 4), q = gen.polynomial(t, 2, 4);
            CHECK(close(commutator(p, q), a.poisson_bracket(p, q) * I, 1e-13));
        }
    }

    const auto p1 = mono(s, {3, 0}), p2 = mono(s, {0, 3});
    CHECK(relative_distance(commutator(p1, p2), alg.poisson_bracket(p1, p2) * I) > 0.1);
    CHECK_THROWS_AS(alg.poisson_bracket(MoyalElement::plane_wave(s, {1.0, 0.0}), p1), DomainError);
}

TEST_CASE("bracket table", "[derivations]")
{
    const auto s = make_structure(2, 1.0);
    const DerivationAlgebra alg(s);
    const auto d1 = Generator::partial(1), d2 = Generator::partial(2);
    const auto x11 = Generator::sym(1, 1), x12 = Generator::sym(1, 2);

    SECTION("[eta_1, eta_2] is a pure central charge")
    {
        const auto c = alg.bracket_generators(d1, d2);
        CHECK(c.coeffs.empty());
        CHECK(std::abs(c.central - I * s->ThetaInv(1, 2)) < 1e-15);
    }
    SECTION("[eta_(11), eta_(12)] = 2 eta_(11)")
    {
        CHECK(close(commutator(alg.eta(x11), alg.eta(x12)), alg.eta(x11) * 2.0, 1e-14));
    }
    SECTION("[eta_1, eta_(12)] = eta_1 / theta")
    {
        CHECK(close(commutator(alg.eta(d1), alg.eta(x12)), alg.eta(d1), 1e-14));
    }
    SECTION("full tables in D = 2 and 4")
    {
        for (int D : {2, 4})
            for (double th : {1.0, 0.4}) {
                const DerivationAlgebra a(make_structure(D, th));
                for (const auto& X : a.basis(BasisKind::G2))
                    for (const auto& Y : a.basis(BasisKind::G2))
                        CHECK(close(commutator(a.eta(X), a.eta(Y)), table_eta_bracket(a, X, Y), 1e-12));
            }
    }
    SECTION("project and assemble are inverse")
    {
        const auto p = commutator(alg.eta(x12), alg.eta(Generator::sym(2, 2)));
        CHECK(close(alg.assemble(alg.project(p)), p, 1e-14));
        CHECK_THROWS_AS(alg.project(mono(s, {3, 0})), DomainError);
    }
}

TEST_CASE("homomorphism of inner derivations", "[derivations]")
{
    ElementGenerator gen(8);
    const auto s = make_structure(4, 0.8);
    const DerivationAlgebra alg(s);
    for (int trial = 0; trial < 10; ++trial) {
        const auto P = gen.polynomial(s, 2, 3), Q = gen.polynomial(s, 2, 3);
        const auto a = gen.element(s);
        const auto lhs = alg.apply(Generator::inner(P), alg.apply(Generator::inner(Q), a)) -
                         alg.apply(Generator::inner(Q), alg.apply(Generator::inner(P), a));
        CHECK(close(lhs, alg.apply(Generator::inner(commutator(P, Q)), a), 1e-11));
    }
}

TEST_CASE("D = 2 rotation basis", "[derivations]")
{
    const auto s = make_structure(2, 1.0);
    const auto rels = d2_special_relations(s);
    REQUIRE(rels.size() == 9);
    for (const auto& r : rels) {
        INFO(r.name);
        CHECK(close(commutator(r.lhs_a, r.lhs_b), r.rhs, 1e-12));
    }

    const auto b = d2_special_basis(s);
    const double r2 = std::sqrt(2.0);
    CHECK(close(commutator(b.eta_x1, b.eta_x2), b.eta_x3 * (-1.0 / r2), 1e-12));
    CHECK(close(commutator(xi(s, 2) * I, b.eta_x3), xi(s, 2) * (I / (2.0 * r2)), 1e-12));
    CHECK(close(commutator(b.eta_x2, b.eta_x3), b.eta_x1 * (1.0 / r2), 1e-12));

    // The listed eta_X-eta_X signs are off by an overall sign.
    for (const auto& r : d2_special_relations(s, true))
        if (r.name == "[X1,X2]") {
            CHECK_FALSE(close(commutator(r.lhs_a, r.lhs_b), r.rhs, 1e-3));
            CHECK(close(commutator(r.lhs_a, r.lhs_b), -r.rhs, 1e-12));
        }

    CHECK_THROWS_AS(d2_special_basis(make_structure(4, 1.0)), DomainError);
}

TEST_CASE("derivations suite", "[derivations][verify]")
{
    for (int D : {2, 4}) {
        VerifyOptions o;
        o.dim = D;
        o.samples = 30;
        for (const auto& c : verify_derivations(o)) {
            INFO(c.name << " measured " << c.measured << " limit " << c.threshold);
            CHECK(c.passed());
        }
    }
}
