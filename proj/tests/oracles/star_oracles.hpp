#pragma once

// Independent evaluations of the Moyal product used as test oracles. None of
// them touches the library's star kernel: they work on plain std containers
// and rebuild Theta from theta on their own.

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

/// c x^alpha e^{i k.x}
struct SimpleTerm {
    Complex c{1.0, 0.0};
    std::vector<int> alpha;
    std::vector<double> k;
};

/// Theta = theta diag(J, ..., J), J = [[0,-1],[1,0]], row-major.
inline std::vector<double> theta_matrix(int D, double theta)
{
    std::vector<double> t(static_cast<std::size_t>(D * D), 0.0);
    for (int b = 0; b < D; b += 2) {
        t[static_cast<std::size_t>(b * D + b + 1)] = -theta;
        t[static_cast<std::size_t>((b + 1) * D + b)] = theta;
    }
    return t;
}

inline double factorial(int n)
{
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// ---------------------------------------------------------------------------
// Generating-function oracle
//
// x^a e^{ik.x} = (-i d/dk)^a e^{ik.x}, and the star product of two plane waves is
// exp(-(i/2) k1 Theta k2) e^{i(k1+k2).x}. The product of two terms is therefore a
// mixed k-derivative of an explicit exponential, computed here with truncated
// multivariate Taylor series.

/// Truncated Taylor series in n variables; variable v keeps powers 0..ext[v]-1.
class Jet {
public:
    explicit Jet(std::vector<int> ext) : ext_(std::move(ext))
    {
        std::size_t n = 1;
        for (int e : ext_) n *= static_cast<std::size_t>(e);
        c_.assign(n, Complex{});
    }

    std::size_t size() const { return c_.size(); }

    std::vector<int> powers(std::size_t flat) const
    {
        std::vector<int> p(ext_.size());
        for (std::size_t v = ext_.size(); v-- > 0;) {
            p[v] = static_cast<int>(flat % static_cast<std::size_t>(ext_[v]));
            flat /= static_cast<std::size_t>(ext_[v]);
        }
        return p;
    }

    bool index(const std::vector<int>& p, std::size_t& flat) const
    {
        flat = 0;
        for (std::size_t v = 0; v < ext_.size(); ++v) {
            if (p[v] >= ext_[v]) return false;
            flat = flat * static_cast<std::size_t>(ext_[v]) + static_cast<std::size_t>(p[v]);
        }
        return true;
    }

    Complex& at(const std::vector<int>& p)
    {
        std::size_t f = 0;
        index(p, f);
        return c_[f];
    }

    Complex get(const std::vector<int>& p) const
    {
        std::size_t f = 0;
        return index(p, f) ? c_[f] : Complex{};
    }

    Jet operator*(const Jet& o) const
    {
        Jet out(ext_);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == Complex{}) continue;
            const auto pi = powers(i);
            for (std::size_t j = 0; j < o.c_.size(); ++j) {
                if (o.c_[j] == Complex{}) continue;
                auto pj = o.powers(j);
                for (std::size_t v = 0; v < pj.size(); ++v) pj[v] += pi[v];
                std::size_t f = 0;
                if (out.index(pj, f)) out.c_[f] += c_[i] * o.c_[j];
            }
        }
        return out;
    }

    /// exp of a jet, by the power series of its non-constant part.
    Jet exp() const
    {
        const Complex c0 = c_[0];
        Jet r = *this;
        r.c_[0] = 0.0;
        int max_total = 0;
        for (int e : ext_) max_total += e - 1;
        Jet out(ext_);
        out.c_[0] = 1.0;
        Jet power = out;
        for (int n = 1; n <= max_total; ++n) {
            power = power * r;
            for (std::size_t i = 0; i < c_.size(); ++i) out.c_[i] += power.c_[i] / factorial(n);
        }
        for (auto& v : out.c_) v *= std::exp(c0);
        return out;
    }

private:
    std::vector<int> ext_;
    std::vector<Complex> c_;
};

/// (t1 * t2)(x) from the generating function, for D = t1.alpha.size().
inline Complex jet_star_value(double theta, const SimpleTerm& t1, const SimpleTerm& t2, const std::vector<double>& x)
{
    const int D = static_cast<int>(t1.alpha.size());
    const auto T = theta_matrix(D, theta);
    const auto th = [&](int a, int b) { return T[static_cast<std::size_t>(a * D + b)]; };
    std::vector<int> ext;
    for (int a : t1.alpha) ext.push_back(a + 1);
    for (int a : t2.alpha) ext.push_back(a + 1);
    const auto nv = ext.size();

    // q(d1, d2) = -(i/2)(k1 + d1) Theta (k2 + d2) + i (k1 + d1 + k2 + d2).x
    Jet q(ext);
    const Complex I{0.0, 1.0};
    std::vector<int> p(nv, 0);
    Complex c0 = 0.0;
    for (int a = 0; a < D; ++a) {
        c0 += I * (t1.k[a] + t2.k[a]) * x[a];
        for (int b = 0; b < D; ++b) c0 += -0.5 * I * t1.k[a] * th(a, b) * t2.k[b];
    }
    q.at(p) = c0;
    for (int a = 0; a < D; ++a) {
        Complex lin1 = I * x[a], lin2 = I * x[a];
        for (int b = 0; b < D; ++b) {
            lin1 += -0.5 * I * th(a, b) * t2.k[b];
            lin2 += -0.5 * I * t1.k[b] * th(b, a);
        }
        std::fill(p.begin(), p.end(), 0);
        p[a] = 1;
        if (ext[a] > 1) q.at(p) += lin1;
        std::fill(p.begin(), p.end(), 0);
        p[D + a] = 1;
        if (ext[D + a] > 1) q.at(p) += lin2;
    }
    for (int a = 0; a < D; ++a)
        for (int b = 0; b < D; ++b) {
            if (th(a, b) == 0.0 || ext[a] < 2 || ext[D + b] < 2) continue;
            std::fill(p.begin(), p.end(), 0);
            p[a] = 1;
            p[D + b] = 1;
            q.at(p) += -0.5 * I * th(a, b);
        }

    const Jet e = q.exp();
    std::vector<int> target;
    for (int a : t1.alpha) target.push_back(a);
    for (int a : t2.alpha) target.push_back(a);
    double fact = 1.0;
    int total = 0;
    for (int a : target) {
        fact *= factorial(a);
        total += a;
    }
    return t1.c * t2.c * std::pow(-I, total) * fact * e.get(target);
}

// ---------------------------------------------------------------------------
// Bidifferential series for pure polynomials
//
// f * g = sum_n (i/2)^n / n! B^n(f, g), B^0(f, g) = f g,
// B^n(f, g) = sum_{mu nu} Theta_{mu nu} B^{n-1}(d_mu f, d_nu g).

using Poly = std::map<std::vector<int>, Complex>;

inline Poly derivative(const Poly& f, int mu)
{
    Poly out;
    for (const auto& [a, c] : f) {
        if (a[static_cast<std::size_t>(mu)] == 0) continue;
        auto b = a;
        b[static_cast<std::size_t>(mu)] -= 1;
        out[b] += c * static_cast<double>(a[static_cast<std::size_t>(mu)]);
    }
    return out;
}

inline Poly product(const Poly& f, const Poly& g)
{
    Poly out;
    for (const auto& [a, ca] : f)
        for (const auto& [b, cb] : g) {
            auto s = a;
            for (std::size_t i = 0; i < s.size(); ++i) s[i] += b[i];
            out[s] += ca * cb;
        }
    return out;
}

inline void add_scaled(Poly& acc, const Poly& f, Complex c)
{
    for (const auto& [a, v] : f) acc[a] += c * v;
}

inline Poly bidifferential(const std::vector<double>& T, int D, const Poly& f, const Poly& g, int n)
{
    if (f.empty() || g.empty()) return {};
    if (n == 0) return product(f, g);
    Poly out;
    for (int m = 0; m < D; ++m)
        for (int v = 0; v < D; ++v) {
            const double t = T[static_cast<std::size_t>(m * D + v)];
            if (t != 0.0) add_scaled(out, bidifferential(T, D, derivative(f, m), derivative(g, v), n - 1), t);
        }
    return out;
}

inline Poly series_star(double theta, int D, const Poly& f, const Poly& g)
{
    const auto T = theta_matrix(D, theta);
    int deg = 0;
    for (const auto& [a, c] : f) {
        int s = 0;
        for (int v : a) s += v;
        deg = std::max(deg, s);
    }
    Poly out;
    Complex w = 1.0;
    for (int n = 0; n <= deg; ++n) {
        if (n > 0) w *= Complex(0.0, 0.5) / static_cast<double>(n);
        add_scaled(out, bidifferential(T, D, f, g, n), w);
    }
    std::erase_if(out, [](const auto& kv) { return std::abs(kv.second) < 1e-14; });
    return out;
}

// ---------------------------------------------------------------------------
// Integral formula in D = 2 with a Gaussian regulator
//
// (f * g)(x) = 1/(pi^2 theta^2) int dy dz f(x+y) g(x+z) exp(-2i y.ThetaInv z),
// regulated by exp(-eps (y^2 + z^2)). For g = (c0 + c.z') e^{ip.z'} the z
// integral is a Gaussian moment; the y integral is done by the trapezoid rule
// around the stationary point, and eps -> 0 by Richardson extrapolation.

/// Linear-times-wave factor (c0 + c1 x1 + c2 x2) e^{i k.x} in D = 2.
struct LinearWave {
    Complex c0;
    Complex c1;
    Complex c2;
    double k1 = 0.0;
    double k2 = 0.0;

    Complex operator()(double x1, double x2) const
    {
        return (c0 + c1 * x1 + c2 * x2) * std::polar(1.0, k1 * x1 + k2 * x2);
    }
};

inline Complex regulated_star_d2(double theta, const LinearWave& f, const LinearWave& g, double x1, double x2,
                                 double eps)
{
    const Complex I{0.0, 1.0};
    const double pi = std::numbers::pi;
    // ThetaInv = -Sigma/theta: ThetaInv_12 = 1/theta, ThetaInv_21 = -1/theta.
    // q = p - 2 ThetaInv^T y, so q1 = p1 + 2 y2/theta, q2 = p2 - 2 y1/theta.
    const auto z_integral = [&](double y1, double y2) {
        const double q1 = g.k1 + 2.0 * y2 / theta;
        const double q2 = g.k2 - 2.0 * y1 / theta;
        const double gauss = (pi / eps) * std::exp(-(q1 * q1 + q2 * q2) / (4.0 * eps));
        // <z_j> = i q_j / (2 eps) under exp(i q.z - eps z^2).
        const Complex lin = g.c0 + g.c1 * x1 + g.c2 * x2 + (g.c1 * q1 + g.c2 * q2) * I / (2.0 * eps);
        return std::polar(1.0, g.k1 * x1 + g.k2 * x2) * gauss * lin;
    };
    // Stationary point of the z-Gaussian: q = 0.
    const double yc1 = 0.5 * theta * g.k2;
    const double yc2 = -0.5 * theta * g.k1;
    const double sigma = theta * std::sqrt(eps / 2.0);
    const int n = 240;
    const double half = 12.0 * sigma;
    const double h = 2.0 * half / n;
    Complex sum = 0.0;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            const double y1 = yc1 - half + i * h;
            const double y2 = yc2 - half + j * h;
            const double w = (i == 0 || i == n ? 0.5 : 1.0) * (j == 0 || j == n ? 0.5 : 1.0);
            sum += w * f(x1 + y1, x2 + y2) * std::exp(-eps * (y1 * y1 + y2 * y2)) * z_integral(y1, y2);
        }
    return sum * h * h / (pi * pi * theta * theta);
}

/// Richardson extrapolation over eps in {e, e/2, e/4} (error terms O(eps), O(eps^2)).
inline Complex quadrature_star_d2(double theta, const LinearWave& f, const LinearWave& g, double x1, double x2,
                                  double eps = 1e-2)
{
    const Complex a = regulated_star_d2(theta, f, g, x1, x2, eps);
    const Complex b = regulated_star_d2(theta, f, g, x1, x2, eps / 2.0);
    const Complex c = regulated_star_d2(theta, f, g, x1, x2, eps / 4.0);
    const Complex r1 = 2.0 * b - a;
    const Complex r2 = 2.0 * c - b;
    return (4.0 * r2 - r1) / 3.0;
}

}  // namespace oracle
