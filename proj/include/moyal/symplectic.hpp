#pragma once

#include <cmath>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "moyal/error.hpp"

namespace moyal {

/**
 * Constant symplectic data of a Moyal space of dimension D = 2n.
 *
 * Theta = theta * Sigma with Sigma = diag(J, ..., J), J = [[0,-1],[1,0]], so
 * Theta_{12} = -theta. The inverse is exact: ThetaInv = -Sigma / theta.
 *
 * All index arguments are 1-based (mu in 1..D) to match the names x1, d1, X12
 * used throughout the library and the CLI.
 */
class SymplecticStructure {
public:
    SymplecticStructure(int dimension, double theta) : dim_(dimension), theta_(theta)
    {
        if (dimension < 2 || dimension % 2 != 0)
            throw DomainError("dimension must be even and positive, got " + std::to_string(dimension));
        if (!(theta > 0.0) || !std::isfinite(theta))
            throw DomainError("theta must be a positive finite real");
        const auto n = static_cast<std::size_t>(dimension);
        sigma_.assign(n * n, 0.0);
        for (std::size_t b = 0; b < n / 2; ++b) {
            sigma_[(2 * b) * n + 2 * b + 1] = -1.0;
            sigma_[(2 * b + 1) * n + 2 * b] = 1.0;
        }
    }

    int dimension() const noexcept { return dim_; }
    double theta() const noexcept { return theta_; }

    double Sigma(int mu, int nu) const { return sigma_[flat(mu, nu)]; }
    double Theta(int mu, int nu) const { return theta_ * sigma_[flat(mu, nu)]; }
    double ThetaInv(int mu, int nu) const { return -sigma_[flat(mu, nu)] / theta_; }

    /// (Theta v)_mu for a D-vector v.
    std::vector<double> apply_theta(std::span<const double> v) const
    {
        check_length(v.size());
        std::vector<double> out(v.size(), 0.0);
        for (int mu = 1; mu <= dim_; ++mu)
            for (int nu = 1; nu <= dim_; ++nu)
                out[mu - 1] += Theta(mu, nu) * v[nu - 1];
        return out;
    }

    /// (ThetaInv v)_mu for a D-vector v.
    std::vector<double> apply_theta_inv(std::span<const double> v) const
    {
        check_length(v.size());
        std::vector<double> out(v.size(), 0.0);
        for (int mu = 1; mu <= dim_; ++mu)
            for (int nu = 1; nu <= dim_; ++nu)
                out[mu - 1] += ThetaInv(mu, nu) * v[nu - 1];
        return out;
    }

    /// a_mu Theta_{mu nu} b_nu.
    double wedge(std::span<const double> a, std::span<const double> b) const
    {
        check_length(a.size());
        check_length(b.size());
        double s = 0.0;
        for (int mu = 1; mu <= dim_; ++mu)
            for (int nu = 1; nu <= dim_; ++nu)
                s += a[mu - 1] * Theta(mu, nu) * b[nu - 1];
        return s;
    }

    void check_index(int mu) const
    {
        if (mu < 1 || mu > dim_)
            throw IndexError("index " + std::to_string(mu) + " outside 1.." + std::to_string(dim_));
    }

    void check_length(std::size_t len) const
    {
        if (len != static_cast<std::size_t>(dim_))
            throw DomainError("vector of length " + std::to_string(len) + " given, expected " +
                              std::to_string(dim_));
    }

    friend bool operator==(const SymplecticStructure& a, const SymplecticStructure& b)
    {
        return a.dim_ == b.dim_ && a.theta_ == b.theta_;
    }

private:
    std::size_t flat(int mu, int nu) const
    {
        check_index(mu);
        check_index(nu);
        return static_cast<std::size_t>(mu - 1) * static_cast<std::size_t>(dim_) +
               static_cast<std::size_t>(nu - 1);
    }

    int dim_;
    double theta_;
    std::vector<double> sigma_;
};

using StructurePtr = std::shared_ptr<const SymplecticStructure>;

inline StructurePtr make_structure(int dimension, double theta)
{
    return std::make_shared<const SymplecticStructure>(dimension, theta);
}

}  // namespace moyal
