#pragma once

#include <functional>

#include "betaspec/rng.hpp"
#include "betaspec/tridiag.hpp"

namespace betaspec {

enum class EnsembleKind { gaussian, laguerre, jacobi };

/// Regime parameters for the tridiagonal models. The inverse temperature
/// is always derived as beta = 2c/N for the finite models and never
/// stored. alpha applies to the Laguerre kind only; a, b to Jacobi only.
struct EnsembleParams {
    EnsembleKind kind = EnsembleKind::gaussian;
    double c = 1.0;
    double alpha = 1.0;
    double a = 1.0;
    double b = 1.0;

    void validate() const;
};

// Finite-size models. Eigenvalues of the returned matrices follow the
// corresponding beta ensemble with beta = 2c/N.

/// Diagonal N(0,1) i.i.d.; off-diagonal j distributed as the 1/sqrt(2)
/// chi with (N-j)*beta degrees of freedom, all independent.
TridiagonalMatrix gaussian_model(RngStream& rng, int N, double c);

/// Lower-bidiagonal B with diagonal chi~_{2 alpha + beta (N-i)} and
/// subdiagonal chi~_{beta (N-i)}, returned as B B^T.
TridiagonalMatrix laguerre_model(RngStream& rng, int N, double alpha, double c);

/// Killip-Nenciu model: independent p_n ~ Beta((N-n)beta/2 + a,
/// (N-n)beta/2 + b) and q_n ~ Beta((N-n)beta/2, (N-n-1)beta/2 + a + b),
/// assembled through s_n = sqrt(p_n (1 - q_{n-1})) (q_0 = 0) and
/// t_n = sqrt(q_n (1 - p_n)) into L L^T. Spectrum lies in [0,1].
TridiagonalMatrix jacobi_model(RngStream& rng, int N, double a, double b, double c);

// Semi-infinite limit matrices truncated at the given depth; every
// N-dependent degree is replaced by its limit 2c.

TridiagonalMatrix gaussian_limit(RngStream& rng, double c, int depth);
TridiagonalMatrix laguerre_limit(RngStream& rng, double alpha, double c, int depth);
TridiagonalMatrix jacobi_limit(RngStream& rng, double a, double b, double c, int depth);

// Generalized samplers with the distribution degree injected per index
// (j = 1..size-1 for the Gaussian off-diagonal, n = 1..size for the
// bidiagonal rows). The finite and limit models above are the two
// instantiations; tests verify the map (N-j)*beta -> 2c reproduces the
// limit sampler draw-for-draw.
using DegreeFn = std::function<double(int)>;
TridiagonalMatrix gaussian_tridiagonal(RngStream& rng, int size, const DegreeFn& offdiag_degree);
TridiagonalMatrix laguerre_bidiagonal_product(RngStream& rng, int size, const DegreeFn& diag_degree,
                                              const DegreeFn& subdiag_degree);
TridiagonalMatrix jacobi_bidiagonal_product(RngStream& rng, int size,
                                            const std::function<double(int)>& p_first,
                                            const std::function<double(int)>& p_second,
                                            const std::function<double(int)>& q_first,
                                            const std::function<double(int)>& q_second);

/// Sample one finite-model (N > 0) or limit (N == 0, use depth) matrix
/// from the given parameters.
TridiagonalMatrix sample_ensemble(RngStream& rng, const EnsembleParams& params, int N, int depth);

/// Entries addressable for law-convergence experiments.
struct EntryRef {
    bool off_diagonal = false;
    int index = 0; ///< 0-based
};

/// One draw of the requested entry of the finite-N model (N > 0) or the
/// limit model (N == 0).
double sample_entry(RngStream& rng, const EnsembleParams& params, int N, const EntryRef& entry);

} // namespace betaspec
