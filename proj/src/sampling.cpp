#include "betaspec/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace betaspec {

double sample_normal(RngStream& rng) {
    for (;;) {
        const double u = 2.0 * rng.uniform01() - 1.0;
        const double v = 2.0 * rng.uniform01() - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0)
            return u * std::sqrt(-2.0 * std::log(s) / s);
    }
}

namespace {

// Marsaglia & Tsang (2000), shape >= 1.
double gamma_ge1(RngStream& rng, double shape) {
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = sample_normal(rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform01();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

} // namespace

double sample_gamma(RngStream& rng, double shape) {
    if (!(shape > 0.0))
        throw std::invalid_argument("sample_gamma: shape must be positive");
    if (shape < 1.0) {
        const double u = rng.uniform01();
        return gamma_ge1(rng, shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    return gamma_ge1(rng, shape);
}

double sample_chi_scaled(RngStream& rng, double k) {
    if (!(k > 0.0))
        throw std::invalid_argument("sample_chi_scaled: degrees of freedom must be positive");
    return std::sqrt(sample_gamma(rng, 0.5 * k));
}

double sample_beta(RngStream& rng, double p, double q) {
    if (!(p > 0.0) || !(q > 0.0))
        throw std::invalid_argument("sample_beta: parameters must be positive");
    for (;;) {
        const double gp = sample_gamma(rng, p);
        const double gq = sample_gamma(rng, q);
        if (gp + gq > 0.0) return gp / (gp + gq);
        // Both draws underflowed; regenerate.
    }
}

std::vector<double> sample_dirichlet_symmetric(RngStream& rng, int n, double tau) {
    if (n < 1) throw std::invalid_argument("sample_dirichlet_symmetric: n must be >= 1");
    if (!(tau > 0.0)) throw std::invalid_argument("sample_dirichlet_symmetric: tau must be positive");
    std::vector<double> w(static_cast<std::size_t>(n));
    for (;;) {
        double total = 0.0;
        for (auto& wi : w) {
            wi = sample_gamma(rng, tau);
            total += wi;
        }
        if (total > 0.0) {
            for (auto& wi : w) wi /= total;
            return w;
        }
    }
}

std::vector<double> sample_dirichlet(RngStream& rng, const std::vector<double>& tau) {
    if (tau.empty()) throw std::invalid_argument("sample_dirichlet: empty parameter vector");
    std::vector<double> w(tau.size());
    for (;;) {
        double total = 0.0;
        for (std::size_t i = 0; i < tau.size(); ++i) {
            if (!(tau[i] > 0.0))
                throw std::invalid_argument("sample_dirichlet: parameters must be positive");
            w[i] = sample_gamma(rng, tau[i]);
            total += w[i];
        }
        if (total > 0.0) {
            for (auto& wi : w) wi /= total;
            return w;
        }
    }
}

std::vector<double> sample_gem(RngStream& rng, double c, int truncation) {
    if (!(c > 0.0)) throw std::invalid_argument("sample_gem: c must be positive");
    if (truncation < 1) throw std::invalid_argument("sample_gem: truncation must be >= 1");
    std::vector<double> w;
    w.reserve(static_cast<std::size_t>(truncation) + 1);
    double remaining = 1.0;
    for (int i = 0; i < truncation; ++i) {
        // Beta(1, c) by inverse CDF: F(v) = 1 - (1-v)^c.
        const double stick = -std::expm1(std::log(rng.uniform01()) / c);
        w.push_back(stick * remaining);
        remaining *= 1.0 - stick;
    }
    w.push_back(remaining);
    return w;
}

std::vector<double> sorted_descending(std::vector<double> weights) {
    std::sort(weights.begin(), weights.end(), std::greater<>());
    return weights;
}

} // namespace betaspec
