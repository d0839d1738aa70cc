#include "betaspec/limit_measures.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "betaspec/ensembles.hpp"
#include "betaspec/parallel.hpp"

namespace betaspec {

namespace {

constexpr double kPi = 3.14159265358979323846;

double solve_t_max(double c, double bound) {
    // e^{-t^2/2} t^{max(c-1,0)} <= bound
    const double p = std::max(c - 1.0, 0.0);
    double t = 8.0;
    for (int i = 0; i < 8; ++i)
        t = std::sqrt(2.0 * (-std::log(bound) + p * std::log(std::max(t, 1.0))));
    return t;
}

} // namespace

const QuadratureRule& gauss_legendre_rule(int order) {
    static std::map<int, QuadratureRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;
    if (order < 1) throw std::invalid_argument("gauss_legendre_rule: order must be >= 1");
    QuadratureRule rule;
    if (order == 1) {
        rule.nodes = {0.0};
        rule.weights = {2.0};
    } else {
        std::vector<double> diag(static_cast<std::size_t>(order), 0.0);
        std::vector<double> off(static_cast<std::size_t>(order - 1));
        for (int j = 1; j < order; ++j)
            off[static_cast<std::size_t>(j - 1)] = j / std::sqrt(4.0 * j * j - 1.0);
        const DiscreteMeasure sp = spectral_measure(TridiagonalMatrix(std::move(diag), std::move(off)));
        rule.nodes = sp.locations();
        rule.weights.resize(sp.size());
        for (std::size_t i = 0; i < sp.size(); ++i) rule.weights[i] = 2.0 * sp.weights()[i];
    }
    return cache.emplace(order, std::move(rule)).first->second;
}

GaussianLimitDensity::GaussianLimitDensity(double c, QuadratureControls controls)
    : c_(c), ctl_(controls) {
    if (!(c > 0.0)) throw std::invalid_argument("GaussianLimitDensity: c must be positive");
    delta_ = std::min(1.0, c);
    t_max_ = solve_t_max(c, ctl_.tail_bound);
    prefactor_ = std::sqrt(c / std::tgamma(c));
    gauss_legendre_rule(ctl_.panel_points); // warm the cache
}

Complex GaussianLimitDensity::kernel_at_phase(double x, double max_phase) const {
    // Series on [0, delta]: with g(t) = e^{-t^2/2 + i x t} = sum h_k t^k,
    // the coefficients obey (k+1) h_{k+1} = i x h_k - h_{k-1} and
    // Int_0^delta t^{c-1} g(t) dt = sum_k h_k delta^{c+k} / (c+k).
    Complex series(0.0, 0.0);
    {
        Complex h_prev(0.0, 0.0);
        Complex h(1.0, 0.0);
        double delta_pow = std::pow(delta_, c_); // delta^{c+k}
        int small_run = 0;
        for (int k = 0; k < 600; ++k) {
            const Complex term = h * (delta_pow / (c_ + k));
            series += term;
            if (std::abs(term) < 1e-19 * std::max(1.0, std::abs(series))) {
                if (++small_run >= 4) break;
            } else {
                small_run = 0;
            }
            const Complex h_next = (Complex(0.0, x) * h - h_prev) / static_cast<double>(k + 1);
            h_prev = h;
            h = h_next;
            delta_pow *= delta_;
        }
    }

    // Gauss-Legendre panels on [delta, t_max], width capped by the phase
    // change |x| * w <= max_phase.
    Complex panels(0.0, 0.0);
    {
        const double w_max = max_phase / std::max(1.0, std::abs(x));
        const int n_panels = static_cast<int>(std::ceil((t_max_ - delta_) / w_max));
        const double w = (t_max_ - delta_) / n_panels;
        const QuadratureRule& rule = gauss_legendre_rule(ctl_.panel_points);
        for (int p = 0; p < n_panels; ++p) {
            const double mid = delta_ + (p + 0.5) * w;
            Complex acc(0.0, 0.0);
            for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
                const double t = mid + 0.5 * w * rule.nodes[q];
                const double mag = std::pow(t, c_ - 1.0) * std::exp(-0.5 * t * t);
                acc += rule.weights[q] * mag * Complex(std::cos(x * t), std::sin(x * t));
            }
            panels += 0.5 * w * acc;
        }
    }

    return prefactor_ * (series + panels);
}

Complex GaussianLimitDensity::kernel(double x) const {
    return kernel_at_phase(x, ctl_.max_phase);
}

double GaussianLimitDensity::kernel_refinement_error(double x) const {
    return std::abs(kernel_at_phase(x, ctl_.max_phase) - kernel_at_phase(x, 0.5 * ctl_.max_phase));
}

double GaussianLimitDensity::density(double x) const {
    const Complex k = kernel(x);
    const double norm2 = std::norm(k);
    if (!(norm2 > 1e-300))
        throw QuadratureAccuracyError("GaussianLimitDensity: kernel vanished");
    return std::exp(-0.5 * x * x) / (std::sqrt(2.0 * kPi) * norm2);
}

Complex rho_c_kernel(double x, double c) {
    return GaussianLimitDensity(c).kernel(x);
}

double rho_c_density(double x, double c) {
    return GaussianLimitDensity(c).density(x);
}

DensityGrid rho_c_grid(double c, const GridSpec& grid, double mass_tol) {
    if (grid.n_points < 2) throw std::invalid_argument("rho_c_grid: need at least 2 points");
    const GaussianLimitDensity eval(c);
    const double h = (grid.x_max - grid.x_min) / (grid.n_points - 1);
    std::vector<double> vals(static_cast<std::size_t>(grid.n_points));
    for (int i = 0; i < grid.n_points; ++i)
        vals[static_cast<std::size_t>(i)] = eval.density(grid.x_min + h * i);
    return DensityGrid(grid.x_min, grid.x_max, std::move(vals), 1.0, mass_tol);
}

double rho_c_integral(double c, const std::function<double(double)>& f, double x_min, double x_max,
                      double panel_width) {
    const GaussianLimitDensity eval(c);
    const QuadratureRule& rule = gauss_legendre_rule(16);
    const int n_panels = static_cast<int>(std::ceil((x_max - x_min) / panel_width));
    const double w = (x_max - x_min) / n_panels;
    double total = 0.0;
    for (int p = 0; p < n_panels; ++p) {
        const double mid = x_min + (p + 0.5) * w;
        double acc = 0.0;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double x = mid + 0.5 * w * rule.nodes[q];
            acc += rule.weights[q] * f(x) * eval.density(x);
        }
        total += 0.5 * w * acc;
    }
    return total;
}

TridiagonalMatrix associated_hermite_matrix(double c, int depth) {
    if (!(c > 0.0)) throw std::invalid_argument("associated_hermite_matrix: c must be positive");
    if (depth < 1) throw std::invalid_argument("associated_hermite_matrix: depth must be >= 1");
    std::vector<double> diag(static_cast<std::size_t>(depth), 0.0);
    std::vector<double> off(static_cast<std::size_t>(depth - 1));
    for (int j = 1; j < depth; ++j) off[static_cast<std::size_t>(j - 1)] = std::sqrt(c + j);
    return TridiagonalMatrix(std::move(diag), std::move(off));
}

TridiagonalMatrix associated_laguerre_matrix(double alpha, double c, int depth) {
    if (!(alpha > 0.0) || !(c > 0.0))
        throw std::invalid_argument("associated_laguerre_matrix: alpha and c must be positive");
    if (depth < 1) throw std::invalid_argument("associated_laguerre_matrix: depth must be >= 1");
    std::vector<double> diag(static_cast<std::size_t>(depth));
    std::vector<double> off(static_cast<std::size_t>(depth - 1));
    diag[0] = alpha + c;
    for (int i = 2; i <= depth; ++i)
        diag[static_cast<std::size_t>(i - 1)] = (alpha + c + i - 1) + (c + i - 1);
    for (int i = 1; i < depth; ++i)
        off[static_cast<std::size_t>(i - 1)] = std::sqrt((c + i) * (alpha + c + i - 1));
    return TridiagonalMatrix(std::move(diag), std::move(off));
}

CdfTable gaussian_limit_cdf(double c) {
    return CdfTable::from_density(rho_c_grid(c, GridSpec{-8.0, 8.0, 1601}));
}

CdfTable cdf_from_spectral_atoms(const DiscreteMeasure& sp, double lo_edge, double hi_edge) {
    if (sp.size() < 2)
        throw std::invalid_argument("cdf_from_spectral_atoms: need at least 2 atoms");
    if (!(lo_edge < sp.locations().front()) || !(hi_edge > sp.locations().back()))
        throw std::invalid_argument("cdf_from_spectral_atoms: edges must bracket the atoms");
    std::vector<double> x, F;
    x.reserve(sp.size() + 2);
    F.reserve(sp.size() + 2);
    x.push_back(lo_edge);
    F.push_back(0.0);
    double cum = 0.0;
    for (std::size_t i = 0; i < sp.size(); ++i) {
        const double w = sp.weights()[i];
        x.push_back(sp.locations()[i]);
        F.push_back(std::min(1.0, cum + 0.5 * w));
        cum += w;
    }
    x.push_back(hi_edge);
    F.push_back(1.0);
    return CdfTable(std::move(x), std::move(F));
}

CdfTable laguerre_limit_cdf(double alpha, double c, int depth) {
    const DiscreteMeasure sp = spectral_measure(associated_laguerre_matrix(alpha, c, depth));
    // Spectrum is nonnegative; the hard edge of the limit law sits at 0.
    const double lo = std::min(0.0, sp.locations().front() - 1e-8);
    const double spacing = sp.locations().back() - sp.locations()[sp.size() - 2];
    return cdf_from_spectral_atoms(sp, lo - 1e-12, sp.locations().back() + spacing);
}

DensityGrid differentiate_cdf(const CdfTable& table, const GridSpec& grid, double target_mass,
                              double mass_tol) {
    if (grid.n_points < 3)
        throw std::invalid_argument("differentiate_cdf: need at least 3 grid points");
    const std::size_t n = static_cast<std::size_t>(grid.n_points);
    const double h = (grid.x_max - grid.x_min) / static_cast<double>(n - 1);
    std::vector<double> F(n);
    for (std::size_t i = 0; i < n; ++i) F[i] = table.value(grid.x_min + h * static_cast<double>(i));
    std::vector<double> vals(n);
    for (std::size_t i = 0; i < n; ++i) {
        double d;
        if (i == 0)
            d = (F[1] - F[0]) / h;
        else if (i + 1 == n)
            d = (F[n - 1] - F[n - 2]) / h;
        else
            d = (F[i + 1] - F[i - 1]) / (2.0 * h);
        vals[i] = std::max(0.0, d);
    }
    return DensityGrid(grid.x_min, grid.x_max, std::move(vals), target_mass, mass_tol);
}

CdfTable EstimatedCdf::table() const {
    return CdfTable(x, cdf);
}

DensityGrid EstimatedCdf::density(double mass_tol) const {
    const std::size_t n = x.size();
    const double h = (x.back() - x.front()) / static_cast<double>(n - 1);
    std::vector<double> vals(n);
    for (std::size_t i = 0; i < n; ++i) {
        double d;
        if (i == 0)
            d = (cdf[1] - cdf[0]) / h;
        else if (i + 1 == n)
            d = (cdf[n - 1] - cdf[n - 2]) / h;
        else
            d = (cdf[i + 1] - cdf[i - 1]) / (2.0 * h);
        vals[i] = std::max(0.0, d);
    }
    return DensityGrid(x.front(), x.back(), std::move(vals), 1.0, mass_tol);
}

EstimatedCdf estimate_jacobi_limit_cdf(RngStream& rng, double a, double b, double c, int depth,
                                       int trials, int n_grid, int threads) {
    if (trials < 100) throw std::invalid_argument("estimate_jacobi_limit_cdf: trials must be >= 100");
    if (n_grid < 2) throw std::invalid_argument("estimate_jacobi_limit_cdf: n_grid must be >= 2");

    const std::size_t n = static_cast<std::size_t>(n_grid);
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i)
        xs[i] = static_cast<double>(i) / static_cast<double>(n - 1);

    // Fixed chunk partition so the reduction is identical for any
    // thread count.
    const std::size_t n_chunks = std::min<std::size_t>(128, static_cast<std::size_t>(trials));
    std::vector<std::vector<double>> sums(n_chunks), sums2(n_chunks);
    parallel_for(n_chunks, threads, [&](std::size_t chunk) {
        const ChunkRange range = chunk_range(static_cast<std::size_t>(trials), n_chunks, chunk);
        std::vector<double> sum(n, 0.0), sum2(n, 0.0);
        for (std::size_t t = range.begin; t < range.end; ++t) {
            RngStream sub = rng.split(t);
            const DiscreteMeasure sp = spectral_measure(jacobi_limit(sub, a, b, c, depth));
            // One CDF sweep over the sorted atoms.
            std::size_t atom = 0;
            double F = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                while (atom < sp.size() && sp.locations()[atom] <= xs[i]) {
                    F += sp.weights()[atom];
                    ++atom;
                }
                sum[i] += F;
                sum2[i] += F * F;
            }
        }
        sums[chunk] = std::move(sum);
        sums2[chunk] = std::move(sum2);
    });

    std::vector<double> mean(n, 0.0), m2(n, 0.0);
    for (std::size_t chunk = 0; chunk < n_chunks; ++chunk) {
        for (std::size_t i = 0; i < n; ++i) {
            mean[i] += sums[chunk][i];
            m2[i] += sums2[chunk][i];
        }
    }

    EstimatedCdf out;
    out.x = std::move(xs);
    out.cdf.resize(n);
    out.se.resize(n);
    out.trials = trials;
    const double T = static_cast<double>(trials);
    for (std::size_t i = 0; i < n; ++i) {
        const double mu = mean[i] / T;
        const double var = std::max(0.0, (m2[i] - T * mu * mu) / (T - 1.0));
        out.cdf[i] = mu;
        out.se[i] = std::sqrt(var / T);
    }
    // Guard against roundoff breaking monotonicity of the averaged CDF.
    for (std::size_t i = 1; i < n; ++i) out.cdf[i] = std::max(out.cdf[i], out.cdf[i - 1]);
    return out;
}

} // namespace betaspec
