// moyal_cli: command-line front end of the moyal library.
//
// Exit status: 0 when every check passes, 1 when a numerical check fails,
// 2 on any input error (bad flags, unparsable expressions or configs).

#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "moyal/bessel_check.hpp"
#include "moyal/moyal.hpp"

namespace {

using namespace moyal;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;

/// Input errors detected by the front end itself.
class UsageError : public Error {
public:
    using Error::Error;
};

std::string format(const char* fmt, ...) __attribute__((format(printf, 1, 2)));

std::string format(const char* fmt, ...)
{
    va_list args;
    va_start(args, fmt);
    va_list copy;
    va_copy(copy, args);
    const int n = std::vsnprintf(nullptr, 0, fmt, copy);
    va_end(copy);
    std::string out(static_cast<std::size_t>(n) + 1, '\0');
    std::vsnprintf(out.data(), out.size(), fmt, args);
    va_end(args);
    out.pop_back();
    return out;
}

struct Flags {
    std::optional<int> dim;
    std::optional<double> theta;
    std::optional<double> mu;
    std::optional<double> m;
    std::optional<double> alpha;
    std::optional<int> n_higgs;
    std::uint64_t seed = 1;
    std::string config;
    std::string out;
    std::optional<double> tol;

    config::Overrides overrides() const { return {dim, theta, mu, m, alpha}; }
};

void print_conventions(int dim, double theta)
{
    std::cout << "# Theta = theta * Sigma, Sigma = diag(J, ..., J), J = [[0,-1],[1,0]], so Theta_12 = -theta\n"
              << "# wedge k ^ q = k_mu Theta_(mu nu) q_nu; W[k] * W[q] = exp(-(i/2) k ^ q) W[k+q]\n"
              << format("# D = %d, theta = %s\n", dim, format_real(theta).c_str());
}

int print_checks(const std::vector<CheckResult>& results)
{
    std::size_t width = 5;
    for (const auto& r : results) width = std::max(width, r.name.size());
    const int w = static_cast<int>(width);
    std::cout << format("%-12s %-*s %11s %9s %6s  %s\n", "suite", w, "check", "measured", "limit", "n", "status");
    int failed = 0;
    for (const auto& r : results) {
        const bool ok = r.passed();
        if (!ok) ++failed;
        std::cout << format("%-12s %-*s %11.3e %9.1e %6d  %s%s\n", r.suite.c_str(), w, r.name.c_str(), r.measured,
                            r.threshold, r.samples, ok ? "pass" : "FAIL", r.expect_mismatch ? " (mismatch)" : "");
    }
    std::cout << format("%zu/%zu checks passed\n", results.size() - static_cast<std::size_t>(failed), results.size());
    return failed == 0 ? kExitOk : kExitCheckFailed;
}

double curvature_distance(const CurvatureTable& a, const CurvatureTable& b)
{
    double worst = 0.0;
    for (const auto& [k, v] : a) worst = std::max(worst, relative_distance(v, b.at(k)));
    return worst;
}

double graded_table_distance(const GradedCurvatureTable& a, const GradedCurvatureTable& b)
{
    double worst = 0.0;
    for (const auto& [k, v] : a) worst = std::max(worst, graded_distance(v, b.at(k)));
    return worst;
}

// ---------------------------------------------------------------------------
// Subcommands

int run_verify_command(const Flags& f, const std::string& scope, int samples)
{
    VerifyOptions o;
    std::vector<CheckResult> extra;
    if (!f.config.empty()) {
        const auto j = config::read_json_file(f.config);
        const auto sc = config::resolve_scales(j, f.overrides());
        o.dim = sc.dim;
        o.theta = sc.theta;
        o.mu = sc.mu;
        o.m = sc.m;
        o.alpha = sc.alpha;
        if (config::is_graded(j)) {
            const auto A = config::load_graded(j, f.overrides());
            extra.push_back({"config", "graded curvature of the configured connection, dual path",
                             graded_table_distance(graded_curvature(A), graded_curvature_generic(A)), 1e-11, false, 1});
        } else {
            const auto A = config::load_connection(j, f.overrides());
            extra.push_back({"config", "curvature of the configured connection, dual path",
                             curvature_distance(curvature(A), curvature_generic(A)), 1e-11, false, 1});
        }
    } else {
        o.dim = f.dim.value_or(2);
        o.theta = f.theta.value_or(1.0);
        o.mu = f.mu.value_or(1.0);
        o.m = f.m.value_or(1.0);
        o.alpha = f.alpha.value_or(1.0);
    }
    (void)make_structure(o.dim, o.theta);
    if (samples < 1) throw UsageError("--samples must be positive");
    o.seed = f.seed;
    o.samples = samples;
    o.tol = f.tol.value_or(0.0);
    if (o.tol < 0.0) throw UsageError("--tol must be non-negative");
    for (auto& r : extra)
        if (o.tol > 0.0) r.threshold = o.tol;

    auto results = run_verify(scope, o);
    results.insert(results.end(), extra.begin(), extra.end());
    print_conventions(o.dim, o.theta);
    std::cout << format("# verify %s, seed %llu, %d samples\n", scope.c_str(),
                        static_cast<unsigned long long>(o.seed), o.samples);
    return print_checks(results);
}

int run_star_command(const Flags& f, const std::string& lhs, const std::string& rhs)
{
    const int dim = f.dim.value_or(2);
    const double theta = f.theta.value_or(1.0);
    const auto s = make_structure(dim, theta);
    const auto parse = [&](const std::string& text, const char* which) {
        try {
            return parse_expression(s, text);
        } catch (const ParseError& e) {
            throw ParseError(std::string(which) + " operand: " + e.what(), 0);
        }
    };
    const MoyalElement a = parse(lhs, "left");
    const MoyalElement b = parse(rhs, "right");
    print_conventions(dim, theta);
    std::cout << "a       = " << print_expression(a) << "\n"
              << "b       = " << print_expression(b) << "\n"
              << "a * b   = " << print_expression(star(a, b)) << "\n"
              << "[a, b]  = " << print_expression(commutator(a, b)) << "\n";
    return kExitOk;
}

double threshold(const Flags& f, double fallback)
{
    const double t = f.tol.value_or(fallback);
    if (!(t > 0.0)) throw UsageError("--tol must be positive");
    return t;
}

int run_curvature_command(const Flags& f)
{
    if (f.config.empty()) throw UsageError("curvature needs --config <file>");
    const auto A = config::load_connection(config::read_json_file(f.config), f.overrides());
    const double tol = threshold(f, 1e-11);
    print_conventions(A.structure()->dimension(), A.structure()->theta());
    std::cout << format("# basis %s, mu = %s, alpha = %s\n", A.basis_kind() == BasisKind::G1 ? "G1" : "G2",
                        format_real(A.mu()).c_str(), format_real(A.alpha()).c_str());

    const auto F = curvature(A);
    const auto basis = A.basis();
    std::cout << "curvature F(X, Y), X before Y in basis order:\n";
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j)
            std::cout << "  F(" << basis[i].name() << ", " << basis[j].name()
                      << ") = " << print_expression(F.at({basis[i], basis[j]})) << "\n";
    std::cout << "action density = " << print_expression(action_density(A)) << "\n";

    const double dual = curvature_distance(F, curvature_generic(A));
    const bool hermitian = A.is_hermitian(1e-12);
    std::cout << format("connection hermitian: %s\n", hermitian ? "yes" : "no");
    std::cout << format("closed form vs generic curvature: %.3e (limit %.1e) %s\n", dual, tol,
                        dual <= tol ? "pass" : "FAIL");
    return dual <= tol ? kExitOk : kExitCheckFailed;
}

int run_graded_command(const Flags& f)
{
    if (f.config.empty()) throw UsageError("graded needs --config <file>");
    const auto A = config::load_graded(config::read_json_file(f.config), f.overrides());
    const double tol = threshold(f, 1e-11);
    print_conventions(A.structure()->dimension(), A.structure()->theta());
    std::cout << format("# m = %s, mu = %s, alpha = %s\n", format_real(A.m()).c_str(), format_real(A.mu()).c_str(),
                        format_real(A.alpha()).c_str());

    const auto F = graded_curvature(A);
    const auto gens = A.generators();
    std::cout << "graded curvature F(X, Y), X not after Y in generator order:\n";
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i; j < gens.size(); ++j) {
            const auto& v = F.at({gens[i], gens[j]});
            std::cout << "  F(" << gens[i].name() << ", " << gens[j].name() << ") = even: " << print_expression(v.even)
                      << " | odd: " << print_expression(v.odd) << "\n";
        }
    try {
        const auto rho = graded_action_density(A);
        std::cout << "action density pieces:\n"
                  << "  yang_mills        = " << print_expression(rho.yang_mills) << "\n"
                  << "  anticommutator    = " << print_expression(rho.anticommutator) << "\n"
                  << "  slavnov           = " << print_expression(rho.slavnov) << "\n"
                  << "  covariant_kinetic = " << print_expression(rho.covariant_kinetic) << "\n"
                  << "  potential         = " << print_expression(rho.potential) << "\n"
                  << "  total             = " << print_expression(rho.total) << "\n";
    } catch (const DomainError& e) {
        std::cout << "action density skipped: " << e.what() << "\n";
    }

    const double dual = graded_table_distance(F, graded_curvature_generic(A));
    std::cout << format("closed form vs generic graded curvature: %.3e (limit %.1e) %s\n", dual, tol,
                        dual <= tol ? "pass" : "FAIL");
    return dual <= tol ? kExitOk : kExitCheckFailed;
}

struct OneLoopFlags {
    double p_min = 1e-2;
    double p_max = 1e-1;
    int points = 6;
    bool verbatim = false;
};

int run_oneloop_command(const Flags& f, const OneLoopFlags& w)
{
    oneloop::LoopConfig cfg;
    cfg.D = f.dim.value_or(4);
    cfg.theta = f.theta.value_or(1.0);
    cfg.mu = f.mu.value_or(1.0);
    cfg.n_higgs = f.n_higgs;
    cfg.validate();
    if (w.points < 4) throw UsageError("--points must be at least 4");
    constexpr double slack = 1e-12;
    if (w.p_min < 1e-2 * (1.0 - slack) || w.p_max > 1e-1 * (1.0 + slack) || !(w.p_min < w.p_max))
        throw UsageError("the |p~| window must lie inside [1e-2, 1e-1]");
    const double tol = threshold(f, 0.02);

    const auto window = oneloop::log_window(w.p_min, w.p_max, w.points);
    const auto weights = w.verbatim ? oneloop::DiagramWeights::verbatim() : oneloop::DiagramWeights::ward_reconciled();
    const auto fit = oneloop::ir_coefficient(cfg, window, weights);
    const int N = cfg.higgs_count();

    print_conventions(cfg.D, cfg.theta);
    std::cout << format("# one-loop IR coefficient, N = %d, mu = %s, %s diagram weights\n", N,
                        format_real(cfg.mu).c_str(), w.verbatim ? "verbatim" : "Ward-reconciled");
    std::cout << format("%12s %16s %16s\n", "|p~|", "c(p~)", "residual");
    bool decreasing = true;
    for (std::size_t i = 0; i < fit.samples.size(); ++i) {
        const auto& s = fit.samples[i];
        std::cout << format("%12.6e %16.9f %16.6e\n", s.ptilde_norm, s.c_point, s.residual);
        if (i > 0 && std::abs(s.residual) < std::abs(fit.samples[i - 1].residual)) decreasing = false;
    }
    const double c = fit.coefficient.scalar();
    const double rel = fit.relative_error();
    std::cout << format("target %.6g, fitted %.6g (relative error %.3e), fit residual %.3e\n", fit.target, c, rel,
                        fit.coefficient.fit_residual);
    double largest = 0.0;
    for (const auto& s : fit.samples) largest = std::max(largest, std::abs(s.residual));
    if (largest <= 1e-12 * std::abs(c))
        std::cout << "transverse residual: at roundoff level over the whole window\n";
    else
        std::cout << format("transverse residual shrinks toward small |p~|: %s\n", decreasing ? "yes" : "no");

    if (!f.out.empty()) {
        std::ofstream csv(f.out);
        if (!csv) throw UsageError("cannot write '" + f.out + "'");
        csv << "ptilde_norm,c_fit,residual,D,N,mu,theta\n";
        for (const auto& s : fit.samples)
            csv << format("%.17g,%.17g,%.17g,%d,%d,%s,%s\n", s.ptilde_norm, s.c_point, s.residual, cfg.D, N,
                          format_real(cfg.mu).c_str(), format_real(cfg.theta).c_str());
        std::cout << "wrote " << f.out << "\n";
    }
    const bool ok = rel <= tol;
    std::cout << format("%s within %.3g%%\n", ok ? "PASS" : "FAIL", 100.0 * tol);
    return ok ? kExitOk : kExitCheckFailed;
}

int run_bessel_command(const Flags& f, int points)
{
    if (points < 1) throw UsageError("--points must be positive");
    auto results = run_bessel_check(f.seed, points);
    if (f.tol)
        for (auto& r : results) r.threshold = threshold(f, 0.0);
    std::cout << format("# bessel-check, seed %llu, %d master points\n", static_cast<unsigned long long>(f.seed),
                        points);
    return print_checks(results);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Moyal algebra calculus: star products, connections, graded curvature, one-loop IR coefficient"};
    app.require_subcommand(1);
    app.fallthrough();

    Flags f;
    app.add_option("--dim", f.dim, "Dimension D (even)");
    app.add_option("--theta", f.theta, "Noncommutativity parameter theta > 0");
    app.add_option("--mu", f.mu, "Mass scale mu");
    app.add_option("--m", f.m, "Graded mass scale m");
    app.add_option("--alpha", f.alpha, "Coupling alpha");
    app.add_option("--n-higgs", f.n_higgs, "Number of Higgs fields (default D(D+1)/2)");
    app.add_option("--seed", f.seed, "Random seed");
    app.add_option("--config", f.config, "Connection or graded config file (JSON)");
    app.add_option("--out", f.out, "Output file (CSV for oneloop)");
    app.add_option("--tol", f.tol, "Override the pass threshold");

    std::string scope;
    int samples = 100;
    auto* verify = app.add_subcommand("verify", "Run the identity and covariance suites");
    verify->add_option("scope", scope, "core | derivations | connections | graded | all")->required();
    verify->add_option("--samples", samples, "Random draws per sampled check");

    std::string lhs, rhs;
    auto* star_cmd = app.add_subcommand("star", "Star product and commutator of two expressions");
    star_cmd->add_option("a", lhs, "Left operand")->required();
    star_cmd->add_option("b", rhs, "Right operand")->required();

    auto* curv = app.add_subcommand("curvature", "Curvature table of a configured connection");
    auto* graded = app.add_subcommand("graded", "Graded curvature and action density of a configured connection");

    OneLoopFlags loop;
    auto* one = app.add_subcommand("oneloop", "Fit the IR coefficient of the nonplanar polarization");
    one->add_option("--p-min", loop.p_min, "Smallest |p~| of the fit window");
    one->add_option("--p-max", loop.p_max, "Largest |p~| of the fit window");
    one->add_option("--points", loop.points, "Number of log-spaced momenta");
    one->add_flag("--verbatim-weights", loop.verbatim, "Use the unreconciled diagram prefactors");

    int bessel_points = 20;
    auto* bessel = app.add_subcommand("bessel-check", "Bessel functions and master integrals against oracles");
    bessel->add_option("--points", bessel_points, "Random master-integral points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (*verify) return run_verify_command(f, scope, samples);
        if (*star_cmd) return run_star_command(f, lhs, rhs);
        if (*curv) return run_curvature_command(f);
        if (*graded) return run_graded_command(f);
        if (*one) return run_oneloop_command(f, loop);
        if (*bessel) return run_bessel_command(f, bessel_points);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
