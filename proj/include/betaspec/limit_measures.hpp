#pragma once

#include "betaspec/measures.hpp"
#include "betaspec/rng.hpp"
#include "betaspec/tridiag.hpp"

namespace betaspec {

struct QuadratureControls {
    int panel_points = 16;     ///< Gauss-Legendre points per panel
    double tail_bound = 1e-20; ///< integrand magnitude kept beyond t_max
    double max_phase = 0.7853981633974483; ///< phase change per panel (pi/4)
};

struct QuadratureAccuracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Evaluator for the limiting eigenvalue density of the Gaussian model,
///   rho_c(x) = e^{-x^2/2} / (sqrt(2 pi) |K_c(x)|^2),
/// where K_c is the half-line oscillatory integral
///   K_c(x) = sqrt(c / Gamma(c)) Int_0^inf t^{c-1} e^{-t^2/2 + i x t} dt.
/// The integral is split at delta = min(1, c): a power series absorbs
/// the t^{c-1} endpoint singularity on [0, delta], and fixed-order
/// Gauss-Legendre panels short enough to bound the phase change cover
/// [delta, t_max].
class GaussianLimitDensity {
public:
    explicit GaussianLimitDensity(double c, QuadratureControls controls = {});

    [[nodiscard]] double c() const { return c_; }
    [[nodiscard]] Complex kernel(double x) const;
    [[nodiscard]] double density(double x) const;

    /// Panel-refinement error estimate |K(x; w) - K(x; w/2)|.
    [[nodiscard]] double kernel_refinement_error(double x) const;

private:
    double c_;
    double delta_;
    double t_max_;
    double prefactor_;
    QuadratureControls ctl_;

    [[nodiscard]] Complex kernel_at_phase(double x, double max_phase) const;
};

Complex rho_c_kernel(double x, double c);
double rho_c_density(double x, double c);

/// Tabulation of rho_c on a uniform grid, checked against unit mass.
DensityGrid rho_c_grid(double c, const GridSpec& grid, double mass_tol = 1e-3);

/// Gauss-Legendre panel quadrature of f(x) * rho_c(x) over [x_min, x_max].
double rho_c_integral(double c, const std::function<double(double)>& f, double x_min,
                      double x_max, double panel_width = 0.25);

/// Deterministic matrix with zero diagonal and off-diagonal sqrt(c + j);
/// its spectral measure is rho_c.
TridiagonalMatrix associated_hermite_matrix(double c, int depth);

/// Product of the deterministic bidiagonal with diagonal sqrt(alpha+c+k)
/// and subdiagonal sqrt(c+k), k = 0, 1, ...; its spectral measure is the
/// Laguerre-case limit law.
TridiagonalMatrix associated_laguerre_matrix(double alpha, double c, int depth);

/// Gauss-Legendre nodes and weights on [-1, 1], computed from the
/// Legendre recurrence matrix via spectral_measure.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const QuadratureRule& gauss_legendre_rule(int order);

/// CDF of the Gaussian-case limit law on a default window, for KS tests
/// and inverse sampling.
CdfTable gaussian_limit_cdf(double c);

/// Smooth CDF through the midpoints of an atomic staircase: the atoms of
/// a depth-n spectral measure are the n-point Gauss rule of the limit
/// law, and the piecewise-linear function through (location, cum - w/2)
/// tracks the limit CDF to O(spacing^2). Edges pin F to 0 and 1.
CdfTable cdf_from_spectral_atoms(const DiscreteMeasure& sp, double lo_edge, double hi_edge);

/// CDF of the Laguerre-case limit law: midpoint CDF of the spectral
/// measure of the deep deterministic recurrence matrix.
CdfTable laguerre_limit_cdf(double alpha, double c, int depth = 3000);

/// Uniform resampling of a tabulated CDF into a density grid by central
/// differences, clipped at zero.
DensityGrid differentiate_cdf(const CdfTable& table, const GridSpec& grid, double target_mass,
                              double mass_tol);

/// Monte Carlo estimate of a CDF with per-point standard errors.
struct EstimatedCdf {
    std::vector<double> x;
    std::vector<double> cdf;
    std::vector<double> se;
    int trials = 0;

    [[nodiscard]] CdfTable table() const;
    /// Central-difference density of the averaged CDF, clipped at 0.
    [[nodiscard]] DensityGrid density(double mass_tol = 5e-2) const;
};

/// Jacobi-case limit law has no closed form here; estimate it as the
/// Monte Carlo average of spectral measures of limit-matrix truncations
/// (the mean of the limiting Dirichlet process is its base law).
EstimatedCdf estimate_jacobi_limit_cdf(RngStream& rng, double a, double b, double c, int depth,
                                       int trials, int n_grid = 201, int threads = 1);

} // namespace betaspec
