#pragma once

namespace betaspec {

/// log Beta(a, b)
double log_beta(double a, double b);

/// Regularized incomplete beta I_x(a, b), the Beta(a, b) CDF at x.
/// Continued-fraction evaluation (Lentz), accurate across the small
/// parameters that arise from Dirichlet(c/N) marginals.
double regularized_incomplete_beta(double a, double b, double x);

inline double beta_cdf(double x, double a, double b) {
    return regularized_incomplete_beta(a, b, x);
}

} // namespace betaspec
