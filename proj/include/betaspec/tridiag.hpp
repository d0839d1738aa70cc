#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "betaspec/measures.hpp"

namespace betaspec {

/// Finite symmetric tridiagonal matrix with strictly positive
/// off-diagonal. Doubles as the recurrence-coefficient table of a
/// measure: diag holds a_1..a_n, offdiag holds b_1..b_{n-1} of
/// P_{k+1}(x) = (x - a_{k+1}) P_k(x) - b_k^2 P_{k-1}(x).
class TridiagonalMatrix {
public:
    TridiagonalMatrix(std::vector<double> diag, std::vector<double> offdiag);

    [[nodiscard]] std::size_t size() const { return diag_.size(); }
    [[nodiscard]] const std::vector<double>& diag() const { return diag_; }
    [[nodiscard]] const std::vector<double>& offdiag() const { return offdiag_; }

    /// Leading k-by-k principal submatrix.
    [[nodiscard]] TridiagonalMatrix truncate(std::size_t k) const;

private:
    std::vector<double> diag_;
    std::vector<double> offdiag_;
};

/// Recurrence coefficients of a measure; structurally identical to the
/// matrix whose spectral measure it is.
using RecurrenceCoefficients = TridiagonalMatrix;

struct EigenConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ContinuedFractionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// n-th power moment (J^n)(1,1) by iterated matrix-vector products on
/// the first coordinate vector. Exact to floating precision; for a
/// truncation of an infinite matrix the caller must keep size > n/2 so
/// the truncation cannot affect the result.
double matrix_moment(const TridiagonalMatrix& J, int n);

/// Moments 0..count-1 in one pass.
MomentVector matrix_moments(const TridiagonalMatrix& J, int count);

/// Atoms at the eigenvalues, weights equal to the squared first
/// components of the normalized eigenvectors. Eigenvalues by
/// implicit-shift QL on the tridiagonal data; first components by
/// twisted factorization at each eigenvalue, which keeps relative
/// accuracy for the exponentially small weights of localized states
/// (the Golub-Welsch rotation row only carries absolute accuracy).
/// O(n^2) overall. Throws EigenConvergenceError if any eigenvalue
/// fails to settle within the iteration budget.
DiscreteMeasure spectral_measure(const TridiagonalMatrix& J);

/// P_k(x) by the three-term recurrence. Requires 0 <= k <= coeffs.size().
double eval_orthopoly(const RecurrenceCoefficients& coeffs, int k, double x);

/// Sum of 1/b_j over the sampled prefix. Divergence of this sum as the
/// depth grows is the standard sufficient condition for the infinite
/// matrix's spectral measure to be determined by its moments; the
/// finite value is a heuristic diagnostic only.
double carleman_sum(const TridiagonalMatrix& J);

/// Finite continued fraction
///   1 / (z - a_1 - b_1^2 / (z - a_2 - ... - b_{n-1}^2 / (z - a_n - tail)))
/// for non-real z. `tail` replaces the truncated remainder (0 for plain
/// truncation). Throws ContinuedFractionError when a partial denominator
/// falls below 1e-300 in magnitude.
Complex stieltjes_cf(const TridiagonalMatrix& J, Complex z, Complex tail = Complex(0.0, 0.0));

/// Self-consistent tail t = b^2 / (z - a - t) for a matrix continuing
/// with constant entries (a, b); the branch is chosen so t vanishes at
/// infinity and conjugate symmetry holds.
Complex self_consistent_tail(double a, double b, Complex z);

enum class CfTail {
    truncate,        ///< tail = 0
    self_consistent, ///< quadratic tail built from the last entries
};

struct GridSpec {
    double x_min;
    double x_max;
    int n_points;
};

/// Absolutely continuous density read off the boundary values of the
/// transform: rho(x) = -(1/pi) Im m(x + i*epsilon), clipped at zero.
DensityGrid density_from_cf(const TridiagonalMatrix& J, const GridSpec& grid, double epsilon,
                            CfTail tail = CfTail::self_consistent, double target_mass = 1.0,
                            double mass_tol = 5e-3);

/// Result of recovering recurrence coefficients from raw moments.
/// achieved_depth < requested_depth signals a Hankel near-singularity
/// (the measure has fewer support points than requested); coefficients
/// then hold the achieved depth only.
struct MomentRecovery {
    RecurrenceCoefficients coefficients;
    int requested_depth;
    int achieved_depth;
    [[nodiscard]] bool complete() const { return achieved_depth == requested_depth; }
};

/// Unique recurrence coefficients reproducing the given moments, by the
/// unmodified Chebyshev algorithm run in extended precision. Moments
/// m[0..2k-1] yield a_1..a_k and b_1..b_{k-1}. Conditioning degrades
/// exponentially; depth 8 is the accuracy contract.
MomentRecovery moments_to_jacobi(const MomentVector& m);

// Matrix CSV: columns "a,b", the last row's b empty; 17 significant
// digits for an exact round-trip. '#' comment lines are skipped.
void write_matrix_csv(std::ostream& os, const TridiagonalMatrix& J,
                      const std::vector<std::string>& comments = {});
TridiagonalMatrix read_matrix_csv(std::istream& is);

} // namespace betaspec
