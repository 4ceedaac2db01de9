#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "moyal/connections.hpp"
#include "moyal/graded.hpp"

namespace moyal {

/// Shape of randomly generated elements.
struct RandomElementOptions {
    int max_terms = 4;
    int max_degree = 2;
    /// Probability that a term carries a plane wave.
    double wave_probability = 0.5;
    /// Wave components are drawn from {-k_max, ..., k_max} in steps of k_step.
    double k_max = 1.0;
    double k_step = 0.25;
};

/**
 * Deterministic source of test elements. Every draw goes through one
 * std::mt19937_64, so a seed fixes the whole sequence.
 */
class ElementGenerator {
public:
    explicit ElementGenerator(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }

    Complex complex() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

    std::vector<double> wave_vector(int dim, const RandomElementOptions& o = {})
    {
        const int steps = static_cast<int>(o.k_max / o.k_step + 0.5);
        std::vector<double> k(static_cast<std::size_t>(dim));
        for (double& v : k) v = o.k_step * integer(-steps, steps);
        return k;
    }

    MoyalElement element(const StructurePtr& s, const RandomElementOptions& o = {})
    {
        const int d = s->dimension();
        MoyalElement out(s);
        const int n = integer(1, o.max_terms);
        for (int t = 0; t < n; ++t) {
            std::vector<int> alpha(static_cast<std::size_t>(d), 0);
            const int deg = integer(0, o.max_degree);
            for (int j = 0; j < deg; ++j) alpha[static_cast<std::size_t>(integer(0, d - 1))] += 1;
            std::vector<double> k(static_cast<std::size_t>(d), 0.0);
            if (coin(o.wave_probability)) k = wave_vector(d, o);
            out += MoyalElement::term(s, std::move(alpha), std::move(k), complex());
        }
        return out;
    }

    /// Polynomial of total degree at most max_degree (no plane waves).
    MoyalElement polynomial(const StructurePtr& s, int max_degree = 2, int max_terms = 4)
    {
        RandomElementOptions o;
        o.max_terms = max_terms;
        o.max_degree = max_degree;
        o.wave_probability = 0.0;
        return element(s, o);
    }

    /// (e + e^dagger) / 2 for a random e.
    MoyalElement hermitian(const StructurePtr& s, const RandomElementOptions& o = {})
    {
        const MoyalElement e = element(s, o);
        return (e + e.adjoint()) * 0.5;
    }

    /// Random hermitian connection components on the chosen basis.
    ConnectionForm connection(const StructurePtr& s, BasisKind basis, double mu = 1.0, double alpha = 1.0,
                              const RandomElementOptions& o = small())
    {
        ConnectionForm A(s, basis, mu, alpha);
        for (const auto& X : A.basis()) A.set(X, hermitian(s, o));
        return A;
    }

    /// Random hermitian graded connection (all four component groups independent).
    GradedConnectionForm graded_connection(const StructurePtr& s, double m = 1.0, double mu = 1.0,
                                           double alpha = 1.0, const RandomElementOptions& o = small())
    {
        GradedConnectionForm A(s, m, mu, alpha);
        for (const auto& X : A.generators()) A.set(X, hermitian(s, o));
        return A;
    }

    /**
     * Graded connection on the action slice: A1 = A0, G0 chosen so that the
     * covariant curly-G0 vanishes, phi random hermitian.
     */
    GradedConnectionForm graded_action_connection(const StructurePtr& s, double m = 1.0, double mu = 1.0,
                                                  double alpha = 1.0, const RandomElementOptions& o = small())
    {
        GradedConnectionForm A(s, m, mu, alpha);
        const int d = s->dimension();
        for (int r = 1; r <= d; ++r) {
            const MoyalElement a = hermitian(s, o);
            A.set(GradedGenerator::T(r), a);
            A.set(GradedGenerator::U(r), a);
        }
        const double sc = A.algebra().m_scale();
        for (const auto& X : A.generators())
            if (X.kind == GradedGenerator::Kind::M) A.set(X, pointwise(xi(s, X.mu), xi(s, X.nu)) * sc);
        A.set(GradedGenerator::J(), hermitian(s, o));
        return A;
    }

    /// e^{i phase} times a product of one to three plane waves: exactly unitary.
    MoyalElement gauge(const StructurePtr& s, const RandomElementOptions& o = {})
    {
        MoyalElement g = MoyalElement::constant(s, std::polar(1.0, uniform(-3.0, 3.0)));
        const int factors = integer(1, 3);
        for (int j = 0; j < factors; ++j) g = star(g, MoyalElement::plane_wave(s, wave_vector(s->dimension(), o)));
        return g;
    }

    static RandomElementOptions small()
    {
        RandomElementOptions o;
        o.max_terms = 3;
        o.max_degree = 2;
        return o;
    }

    /// Two-term, degree-one components: keeps quartic densities cheap.
    static RandomElementOptions tiny()
    {
        RandomElementOptions o;
        o.max_terms = 2;
        o.max_degree = 1;
        return o;
    }

    std::mt19937_64& engine() noexcept { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace moyal
