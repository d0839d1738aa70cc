#include "betaspec/ensembles.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "betaspec/sampling.hpp"

namespace betaspec {

namespace {

// Chi-type draws of astronomically small degree can underflow to exactly
// zero; the matrix type requires strictly positive off-diagonals, and
// anything below DBL_MIN is spectrally indistinguishable from it.
inline double floor_positive(double x) {
    return std::max(x, std::numeric_limits<double>::min());
}

void require_finite_size(int N) {
    if (N < 1) throw std::invalid_argument("ensemble model: N must be >= 1");
}

void require_depth(int depth) {
    if (depth < 1) throw std::invalid_argument("ensemble limit: depth must be >= 1");
}

} // namespace

void EnsembleParams::validate() const {
    if (!(c > 0.0)) throw std::invalid_argument("EnsembleParams: c must be positive");
    if (kind == EnsembleKind::laguerre && !(alpha > 0.0))
        throw std::invalid_argument("EnsembleParams: alpha must be positive");
    if (kind == EnsembleKind::jacobi && (!(a > 0.0) || !(b > 0.0)))
        throw std::invalid_argument("EnsembleParams: a and b must be positive");
}

TridiagonalMatrix gaussian_tridiagonal(RngStream& rng, int size, const DegreeFn& offdiag_degree) {
    require_finite_size(size);
    std::vector<double> diag(static_cast<std::size_t>(size));
    std::vector<double> off(static_cast<std::size_t>(size - 1));
    for (auto& d : diag) d = sample_normal(rng);
    for (int j = 1; j < size; ++j)
        off[static_cast<std::size_t>(j - 1)] = floor_positive(sample_chi_scaled(rng, offdiag_degree(j)));
    return TridiagonalMatrix(std::move(diag), std::move(off));
}

TridiagonalMatrix gaussian_model(RngStream& rng, int N, double c) {
    if (!(c > 0.0)) throw std::invalid_argument("gaussian_model: c must be positive");
    const double beta = 2.0 * c / N;
    return gaussian_tridiagonal(rng, N, [&](int j) { return (N - j) * beta; });
}

TridiagonalMatrix gaussian_limit(RngStream& rng, double c, int depth) {
    if (!(c > 0.0)) throw std::invalid_argument("gaussian_limit: c must be positive");
    require_depth(depth);
    return gaussian_tridiagonal(rng, depth, [&](int) { return 2.0 * c; });
}

TridiagonalMatrix laguerre_bidiagonal_product(RngStream& rng, int size, const DegreeFn& diag_degree,
                                              const DegreeFn& subdiag_degree) {
    require_finite_size(size);
    std::vector<double> d(static_cast<std::size_t>(size));
    std::vector<double> e(static_cast<std::size_t>(size - 1));
    for (int i = 1; i <= size; ++i)
        d[static_cast<std::size_t>(i - 1)] = sample_chi_scaled(rng, diag_degree(i));
    for (int i = 1; i < size; ++i)
        e[static_cast<std::size_t>(i - 1)] = sample_chi_scaled(rng, subdiag_degree(i));

    std::vector<double> diag(static_cast<std::size_t>(size));
    std::vector<double> off(static_cast<std::size_t>(size - 1));
    for (int i = 0; i < size; ++i) {
        double v = d[static_cast<std::size_t>(i)] * d[static_cast<std::size_t>(i)];
        if (i > 0) v += e[static_cast<std::size_t>(i - 1)] * e[static_cast<std::size_t>(i - 1)];
        diag[static_cast<std::size_t>(i)] = v;
    }
    for (int i = 0; i + 1 < size; ++i)
        off[static_cast<std::size_t>(i)] =
            floor_positive(d[static_cast<std::size_t>(i)] * e[static_cast<std::size_t>(i)]);
    return TridiagonalMatrix(std::move(diag), std::move(off));
}

TridiagonalMatrix laguerre_model(RngStream& rng, int N, double alpha, double c) {
    if (!(alpha > 0.0) || !(c > 0.0))
        throw std::invalid_argument("laguerre_model: alpha and c must be positive");
    const double beta = 2.0 * c / N;
    return laguerre_bidiagonal_product(
        rng, N, [&](int i) { return 2.0 * alpha + beta * (N - i); },
        [&](int i) { return beta * (N - i); });
}

TridiagonalMatrix laguerre_limit(RngStream& rng, double alpha, double c, int depth) {
    if (!(alpha > 0.0) || !(c > 0.0))
        throw std::invalid_argument("laguerre_limit: alpha and c must be positive");
    require_depth(depth);
    return laguerre_bidiagonal_product(
        rng, depth, [&](int) { return 2.0 * (alpha + c); }, [&](int) { return 2.0 * c; });
}

TridiagonalMatrix jacobi_bidiagonal_product(RngStream& rng, int size,
                                            const std::function<double(int)>& p_first,
                                            const std::function<double(int)>& p_second,
                                            const std::function<double(int)>& q_first,
                                            const std::function<double(int)>& q_second) {
    require_finite_size(size);
    std::vector<double> p(static_cast<std::size_t>(size));
    std::vector<double> q(static_cast<std::size_t>(size > 1 ? size - 1 : 0));
    for (int n = 1; n <= size; ++n)
        p[static_cast<std::size_t>(n - 1)] = sample_beta(rng, p_first(n), p_second(n));
    for (int n = 1; n < size; ++n)
        q[static_cast<std::size_t>(n - 1)] = sample_beta(rng, q_first(n), q_second(n));

    // s_n = sqrt(p_n (1 - q_{n-1})) with q_0 = 0; t_n = sqrt(q_n (1 - p_n)).
    std::vector<double> s(static_cast<std::size_t>(size));
    std::vector<double> t(static_cast<std::size_t>(size > 1 ? size - 1 : 0));
    for (int n = 1; n <= size; ++n) {
        const double qprev = n == 1 ? 0.0 : q[static_cast<std::size_t>(n - 2)];
        s[static_cast<std::size_t>(n - 1)] = std::sqrt(p[static_cast<std::size_t>(n - 1)] * (1.0 - qprev));
    }
    for (int n = 1; n < size; ++n)
        t[static_cast<std::size_t>(n - 1)] =
            std::sqrt(q[static_cast<std::size_t>(n - 1)] * (1.0 - p[static_cast<std::size_t>(n - 1)]));

    std::vector<double> diag(static_cast<std::size_t>(size));
    std::vector<double> off(static_cast<std::size_t>(size > 1 ? size - 1 : 0));
    for (int i = 0; i < size; ++i) {
        double v = s[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(i)];
        if (i > 0) v += t[static_cast<std::size_t>(i - 1)] * t[static_cast<std::size_t>(i - 1)];
        diag[static_cast<std::size_t>(i)] = v;
    }
    for (int i = 0; i + 1 < size; ++i)
        off[static_cast<std::size_t>(i)] =
            floor_positive(s[static_cast<std::size_t>(i)] * t[static_cast<std::size_t>(i)]);
    return TridiagonalMatrix(std::move(diag), std::move(off));
}

TridiagonalMatrix jacobi_model(RngStream& rng, int N, double a, double b, double c) {
    if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0))
        throw std::invalid_argument("jacobi_model: a, b, c must be positive");
    const double beta = 2.0 * c / N;
    return jacobi_bidiagonal_product(
        rng, N, [&](int n) { return (N - n) * beta / 2.0 + a; },
        [&](int n) { return (N - n) * beta / 2.0 + b; },
        [&](int n) { return (N - n) * beta / 2.0; },
        [&](int n) { return (N - n - 1) * beta / 2.0 + a + b; });
}

TridiagonalMatrix jacobi_limit(RngStream& rng, double a, double b, double c, int depth) {
    if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0))
        throw std::invalid_argument("jacobi_limit: a, b, c must be positive");
    require_depth(depth);
    return jacobi_bidiagonal_product(
        rng, depth, [&](int) { return c + a; }, [&](int) { return c + b; },
        [&](int) { return c; }, [&](int) { return c + a + b; });
}

TridiagonalMatrix sample_ensemble(RngStream& rng, const EnsembleParams& params, int N, int depth) {
    params.validate();
    const bool limit = N == 0;
    switch (params.kind) {
    case EnsembleKind::gaussian:
        return limit ? gaussian_limit(rng, params.c, depth) : gaussian_model(rng, N, params.c);
    case EnsembleKind::laguerre:
        return limit ? laguerre_limit(rng, params.alpha, params.c, depth)
                     : laguerre_model(rng, N, params.alpha, params.c);
    case EnsembleKind::jacobi:
        return limit ? jacobi_limit(rng, params.a, params.b, params.c, depth)
                     : jacobi_model(rng, N, params.a, params.b, params.c);
    }
    throw std::invalid_argument("sample_ensemble: unknown kind");
}

double sample_entry(RngStream& rng, const EnsembleParams& params, int N, const EntryRef& entry) {
    if (entry.index < 0) throw std::invalid_argument("sample_entry: negative index");
    const int needed = entry.index + (entry.off_diagonal ? 2 : 1);
    const int size = N == 0 ? needed : N;
    if (size < needed)
        throw std::invalid_argument("sample_entry: entry outside the matrix");
    const TridiagonalMatrix J = sample_ensemble(rng, params, N, size);
    return entry.off_diagonal ? J.offdiag()[static_cast<std::size_t>(entry.index)]
                              : J.diag()[static_cast<std::size_t>(entry.index)];
}

} // namespace betaspec
