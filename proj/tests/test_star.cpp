#include "catch_amalgamated.hpp"

#include "moyal/random.hpp"
#include "moyal/star.hpp"
#include "oracles/star_oracles.hpp"

using namespace moyal;

namespace {

MoyalElement x(const StructurePtr& s, int mu) { return coordinate(s, mu); }

oracle::Poly to_poly(const MoyalElement& e)
{
    oracle::Poly p;
    for (const auto& [key, c] : e.terms()) p[key.alpha] += c;
    return p;
}

MoyalElement from_poly(const StructurePtr& s, const oracle::Poly& p)
{
    MoyalElement out(s);
    for (const auto& [a, c] : p) out += MoyalElement::monomial(s, a, c);
    return out;
}

}  // namespace

TEST_CASE("star product examples", "[star]")
{
    const auto s = make_structure(2, 1.0);
    SECTION("x1 * x2 = x1 x2 - i/2")
    {
        CHECK(approx_equal(star(x(s, 1), x(s, 2)), MoyalElement::monomial(s, {1, 1}) + Complex(0.0, -0.5), 1e-15));
    }
    SECTION("plane wave times its inverse is the unit")
    {
        const std::vector<double> k{0.75, -1.25};
        const std::vector<double> mk{-0.75, 1.25};
        CHECK(approx_equal(star(MoyalElement::plane_wave(s, k), MoyalElement::plane_wave(s, mk)),
                           MoyalElement::unit(s), 1e-15));
    }
    SECTION("(x1 + x2) * (x1 - x2) = x1^2 - x2^2 + i theta")
    {
        for (double th : {1.0, 0.3}) {
            const auto t = make_structure(2, th);
            const auto lhs = star(x(t, 1) + x(t, 2), x(t, 1) - x(t, 2));
            const auto rhs = MoyalElement::monomial(t, {2, 0}) - MoyalElement::monomial(t, {0, 2}) + Complex(0.0, th);
            CHECK(approx_equal(lhs, rhs, 1e-15));
        }
    }
    SECTION("unit law")
    {
        ElementGenerator gen(3);
        for (int i = 0; i < 20; ++i) {
            const auto a = gen.element(s);
            CHECK(star(a, MoyalElement::unit(s)) == a);
            CHECK(star(MoyalElement::unit(s), a) == a);
        }
    }
    SECTION("plane-wave phase exp(-(i/2) k Theta p)")
    {
        const std::vector<double> k{1.0, 0.5}, p{-0.25, 2.0};
        const double w = s->wedge(k, p);
        const auto lhs = star(MoyalElement::plane_wave(s, k), MoyalElement::plane_wave(s, p));
        CHECK(approx_equal(lhs, MoyalElement::plane_wave(s, {0.75, 2.5}, std::polar(1.0, -0.5 * w)), 1e-15));
    }
}

TEST_CASE("commutator and anticommutator examples", "[star]")
{
    const auto s = make_structure(2, 1.0);
    CHECK(approx_equal(commutator(x(s, 1), x(s, 2)), MoyalElement::constant(s, Complex(0.0, -1.0)), 1e-15));

    // [x_mu, a] = i Theta_{mu nu} d_nu a
    for (double th : {1.0, 0.7}) {
        const auto t = make_structure(4, th);
        const auto a = MoyalElement::monomial(t, {2, 1, 0, 3}) + MoyalElement::term(t, {1, 0, 1, 0}, {0.5, 0, -1, 0.25});
        for (int mu = 1; mu <= 4; ++mu) {
            MoyalElement rhs(t);
            for (int nu = 1; nu <= 4; ++nu)
                if (t->Theta(mu, nu) != 0.0) rhs += a.partial(nu) * (I * t->Theta(mu, nu));
            CHECK(relative_distance(commutator(x(t, mu), a), rhs) < 1e-13);
        }
    }

    // {xi_1, xi_2} = 2 xi_1 xi_2
    CHECK(approx_equal(anticommutator(xi(s, 1), xi(s, 2)), pointwise(xi(s, 1), xi(s, 2)) * 2.0, 1e-15));
}

TEST_CASE("generating-function oracle on random single terms", "[star][oracle]")
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> deg(0, 3);
    std::uniform_int_distribution<int> kstep(-4, 4);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int D : {2, 4}) {
        for (double th : {1.0, 0.6}) {
            const auto s = make_structure(D, th);
            for (int trial = 0; trial < 25; ++trial) {
                oracle::SimpleTerm t[2];
                for (auto& term : t) {
                    term.c = Complex(unit(rng), unit(rng));
                    term.alpha.assign(static_cast<std::size_t>(D), 0);
                    term.k.assign(static_cast<std::size_t>(D), 0.0);
                    for (int j = 0; j < D; ++j) {
                        if (D == 4 && deg(rng) > 1) continue;
                        term.alpha[static_cast<std::size_t>(j)] = deg(rng);
                        term.k[static_cast<std::size_t>(j)] = 0.25 * kstep(rng);
                    }
                }
                const auto e1 = MoyalElement::term(s, t[0].alpha, t[0].k, t[0].c);
                const auto e2 = MoyalElement::term(s, t[1].alpha, t[1].k, t[1].c);
                const auto product = star(e1, e2);
                for (int pt = 0; pt < 3; ++pt) {
                    std::vector<double> xs(static_cast<std::size_t>(D));
                    for (auto& v : xs) v = 1.5 * unit(rng);
                    const Complex want = oracle::jet_star_value(th, t[0], t[1], xs);
                    const Complex got = product.evaluate(xs);
                    CHECK(std::abs(got - want) <= 1e-10 * std::max(1.0, std::abs(want)));
                }
            }
        }
    }
}

TEST_CASE("bidifferential series oracle on random polynomials", "[star][oracle]")
{
    ElementGenerator gen(21);
    for (int D : {2, 4}) {
        const auto s = make_structure(D, 0.8);
        for (int trial = 0; trial < 30; ++trial) {
            const auto a = gen.polynomial(s, 4, 4);
            const auto b = gen.polynomial(s, 4, 4);
            const auto want = from_poly(s, oracle::series_star(0.8, D, to_poly(a), to_poly(b)));
            CHECK(relative_distance(star(a, b), want) < 1e-13);
        }
    }
}

TEST_CASE("integral formula with a Gaussian regulator", "[star][oracle]")
{
    // (x1 e^{i k.x}) * (x2 e^{i p.x}), k = (1, 0), p = (0, 1), theta = 1.
    const auto s = make_structure(2, 1.0);
    const auto product = star(MoyalElement::term(s, {1, 0}, {1.0, 0.0}), MoyalElement::term(s, {0, 1}, {0.0, 1.0}));
    const oracle::LinearWave f{0.0, 1.0, 0.0, 1.0, 0.0};
    const oracle::LinearWave g{0.0, 0.0, 1.0, 0.0, 1.0};
    for (auto [x1, x2] : {std::pair{0.0, 0.0}, {1.0, 2.0}, {-0.3, 0.7}}) {
        const std::vector<double> pt{x1, x2};
        const Complex want = oracle::quadrature_star_d2(1.0, f, g, x1, x2, 4e-3);
        CHECK(std::abs(product.evaluate(pt) - want) < 1e-6);
    }
}

TEST_CASE("algebraic laws on random elements", "[star]")
{
    ElementGenerator gen(5);
    for (int D : {2, 4}) {
        const auto s = make_structure(D, 1.3);
        for (int i = 0; i < 30; ++i) {
            const auto a = gen.element(s), b = gen.element(s), c = gen.element(s);
            CHECK(relative_distance(star(star(a, b), c), star(a, star(b, c))) < 1e-10);
            CHECK(relative_distance(star(a, b).adjoint(), star(b.adjoint(), a.adjoint())) < 1e-12);
            const int mu = gen.integer(1, D);
            CHECK(relative_distance(star(a, b).partial(mu), star(a.partial(mu), b) + star(a, b.partial(mu))) < 1e-11);
            CHECK(relative_distance(star(a, b + c), star(a, b) + star(a, c)) < 1e-12);
        }
    }
}

TEST_CASE("star_term matches the bilinear product", "[star]")
{
    const auto s = make_structure(2, 1.0);
    const Term t1{TermKey{{2, 1}, {0.5, 0.0}}, Complex(1.0, 1.0)};
    const Term t2{TermKey{{0, 2}, {0.0, -1.0}}, Complex(0.5, 0.0)};
    const auto e1 = MoyalElement::term(s, t1.key.alpha, t1.key.k, t1.coeff);
    const auto e2 = MoyalElement::term(s, t2.key.alpha, t2.key.k, t2.coeff);
    CHECK(star_term(s, t1, t2) == star(e1, e2));
    CHECK(star(e1, e2, e1) == star(star(e1, e2), e1));
}

TEST_CASE("coordinate commutators", "[star]")
{
    for (int D : {2, 4, 6}) {
        const auto s = make_structure(D, 0.9);
        for (int mu = 1; mu <= D; ++mu)
            for (int nu = 1; nu <= D; ++nu) {
                CHECK(commutator(x(s, mu), x(s, nu)) == MoyalElement::constant(s, I * s->Theta(mu, nu)));
                CHECK(approx_equal(commutator(xi(s, mu), xi(s, nu)), MoyalElement::constant(s, -I * s->ThetaInv(mu, nu)),
                                   1e-15));
            }
    }
    const auto s = make_structure(2, 1.0);
    CHECK(star(star(x(s, 1), x(s, 2)), x(s, 1)) == star(x(s, 1), star(x(s, 2), x(s, 1))));
}
