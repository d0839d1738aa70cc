#pragma once

#include <vector>

#include "betaspec/rng.hpp"

namespace betaspec {

/// One standard normal variate (Marsaglia polar method).
double sample_normal(RngStream& rng);

/// Gamma(shape, scale 1). Valid for every shape > 0: Marsaglia-Tsang
/// squeeze for shape >= 1, and the power-of-uniform boost
/// Gamma(a) = Gamma(a+1) * U^(1/a) for shape < 1. Variates below
/// ~1e-308 underflow to zero in the boosted branch; callers treat a
/// zero draw as mass lost below double precision.
double sample_gamma(RngStream& rng, double shape);

/// X such that X^2 ~ Gamma(k/2, 1), i.e. a chi_k variate scaled by
/// 1/sqrt(2). k may be any positive real.
double sample_chi_scaled(RngStream& rng, double k);

/// Beta(p, q) on (0,1) via the gamma ratio.
double sample_beta(RngStream& rng, double p, double q);

/// Symmetric Dirichlet(tau, ..., tau) on the n-simplex. Output sums to 1
/// exactly up to one final renormalization.
std::vector<double> sample_dirichlet_symmetric(RngStream& rng, int n, double tau);

/// General Dirichlet with per-coordinate parameters.
std::vector<double> sample_dirichlet(RngStream& rng, const std::vector<double>& tau);

/// First `truncation` stick-breaking weights with sticks V_i ~ Beta(1, c),
/// followed by the leftover mass as the final entry. The returned vector
/// has truncation + 1 entries and sums to 1.
std::vector<double> sample_gem(RngStream& rng, double c, int truncation);

/// Weights rearranged in descending order.
std::vector<double> sorted_descending(std::vector<double> weights);

} // namespace betaspec
