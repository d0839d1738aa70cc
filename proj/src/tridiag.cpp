#include "betaspec/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

namespace betaspec {

TridiagonalMatrix::TridiagonalMatrix(std::vector<double> diag, std::vector<double> offdiag)
    : diag_(std::move(diag)), offdiag_(std::move(offdiag)) {
    if (diag_.empty())
        throw std::invalid_argument("TridiagonalMatrix: empty diagonal");
    if (offdiag_.size() + 1 != diag_.size())
        throw std::invalid_argument("TridiagonalMatrix: need |offdiag| = |diag| - 1");
    for (double a : diag_)
        if (!std::isfinite(a)) throw std::invalid_argument("TridiagonalMatrix: non-finite entry");
    for (double b : offdiag_)
        if (!(b > 0.0) || !std::isfinite(b))
            throw std::invalid_argument("TridiagonalMatrix: off-diagonal entries must be strictly positive");
}

TridiagonalMatrix TridiagonalMatrix::truncate(std::size_t k) const {
    if (k < 1 || k > size())
        throw std::invalid_argument("TridiagonalMatrix::truncate: bad size");
    return TridiagonalMatrix(std::vector<double>(diag_.begin(), diag_.begin() + k),
                             std::vector<double>(offdiag_.begin(), offdiag_.begin() + (k - 1)));
}

namespace {

// y = J x for the tridiagonal J.
void apply(const TridiagonalMatrix& J, const std::vector<double>& x, std::vector<double>& y) {
    const auto& a = J.diag();
    const auto& b = J.offdiag();
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
        double v = a[i] * x[i];
        if (i > 0) v += b[i - 1] * x[i - 1];
        if (i + 1 < n) v += b[i] * x[i + 1];
        y[i] = v;
    }
}

} // namespace

double matrix_moment(const TridiagonalMatrix& J, int n) {
    if (n < 0) throw std::invalid_argument("matrix_moment: n must be >= 0");
    std::vector<double> v(J.size(), 0.0), w(J.size(), 0.0);
    v[0] = 1.0;
    for (int k = 0; k < n; ++k) {
        apply(J, v, w);
        std::swap(v, w);
    }
    return v[0];
}

MomentVector matrix_moments(const TridiagonalMatrix& J, int count) {
    if (count < 1) throw std::invalid_argument("matrix_moments: count must be >= 1");
    std::vector<double> m;
    m.reserve(static_cast<std::size_t>(count));
    std::vector<double> v(J.size(), 0.0), w(J.size(), 0.0);
    v[0] = 1.0;
    m.push_back(1.0);
    for (int k = 1; k < count; ++k) {
        apply(J, v, w);
        std::swap(v, w);
        m.push_back(v[0]);
    }
    return MomentVector(std::move(m));
}

namespace {

// Squared first component of the normalized eigenvector at lambda,
// computed through a twisted factorization (Fernando 1997): forward and
// backward pivot sequences of J - lambda, twist at the index where the
// diagonal of the twisted factor is smallest, then eigenvector ratios
// that decay away from the twist. Stable for localized states, where
// both the plain z-accumulation (absolute noise floor ~1e-32) and the
// forward polynomial recurrence (divergent past the localization
// center) lose all relative accuracy. The first component is assembled
// in log scale so weights are exact down to the underflow edge.
double first_component_squared(const TridiagonalMatrix& J, double lambda) {
    const auto& a = J.diag();
    const auto& b = J.offdiag();
    const std::size_t n = a.size();
    if (n == 1) return 1.0;

    const auto guard = [](double d) {
        const double tiny = 1e-290;
        if (std::abs(d) < tiny) return d < 0.0 ? -tiny : tiny;
        return d;
    };

    std::vector<double> dplus(n), dminus(n);
    dplus[0] = a[0] - lambda;
    for (std::size_t k = 1; k < n; ++k)
        dplus[k] = (a[k] - lambda) - b[k - 1] * b[k - 1] / guard(dplus[k - 1]);
    dminus[n - 1] = a[n - 1] - lambda;
    for (std::size_t k = n - 1; k-- > 0;)
        dminus[k] = (a[k] - lambda) - b[k] * b[k] / guard(dminus[k + 1]);

    std::size_t twist = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
        const double gamma = std::abs(dplus[k] + dminus[k] - (a[k] - lambda));
        if (gamma < best) {
            best = gamma;
            twist = k;
        }
    }

    // v(twist) = 1; ratios v(j)/v(j+1) = -b_j/dplus_j going up and
    // v(j)/v(j-1) = -b_{j-1}/dminus_j going down.
    double log_first = 0.0; // log |v(1)|
    double norm2 = 1.0;
    double prod = 1.0;
    for (std::size_t j = twist; j-- > 0;) {
        const double ratio = -b[j] / guard(dplus[j]);
        log_first += std::log(std::abs(ratio));
        prod *= ratio;
        norm2 += prod * prod;
    }
    prod = 1.0;
    for (std::size_t j = twist + 1; j < n; ++j) {
        const double ratio = -b[j - 1] / guard(dminus[j]);
        prod *= ratio;
        norm2 += prod * prod;
        if (prod == 0.0) break;
    }

    const double w = std::exp(2.0 * log_first - std::log(norm2));
    return std::min(w, 1.0);
}

} // namespace

DiscreteMeasure spectral_measure(const TridiagonalMatrix& J) {
    const std::size_t n = J.size();
    std::vector<double> d = J.diag();
    std::vector<double> e = J.offdiag();
    e.push_back(0.0);

    const double eps = std::numeric_limits<double>::epsilon();
    const int max_iter = 30;

    for (std::size_t l = 0; l < n; ++l) {
        for (int iter = 0;; ++iter) {
            std::size_t m = l;
            while (m + 1 < n) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
                ++m;
            }
            if (m == l) break;
            if (iter >= max_iter)
                throw EigenConvergenceError("spectral_measure: QL iteration budget exhausted");

            // Wilkinson shift from the leading 2x2 of the active block.
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;

            bool underflow = false;
            for (std::size_t i1 = m; i1-- > l;) {
                double f = s * e[i1];
                const double bb = c * e[i1];
                r = std::hypot(f, g);
                e[i1 + 1] = r;
                if (r == 0.0) {
                    // Deflate: the rotation chain collapsed early.
                    d[i1 + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i1 + 1] - p;
                r = (d[i1] - g) * s + 2.0 * c * bb;
                p = s * r;
                d[i1 + 1] = g + p;
                g = c * r - bb;
            }
            if (underflow) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    std::vector<std::pair<double, double>> atoms(n);
    for (std::size_t i = 0; i < n; ++i)
        atoms[i] = {d[i], first_component_squared(J, d[i])};
    return DiscreteMeasure::from_atoms(std::move(atoms));
}

double eval_orthopoly(const RecurrenceCoefficients& coeffs, int k, double x) {
    if (k < 0 || static_cast<std::size_t>(k) > coeffs.size())
        throw std::invalid_argument("eval_orthopoly: k out of range");
    if (k == 0) return 1.0;
    double p_prev = 1.0;
    double p = x - coeffs.diag()[0];
    for (int j = 1; j < k; ++j) {
        const double b = coeffs.offdiag()[j - 1];
        const double p_next = (x - coeffs.diag()[j]) * p - b * b * p_prev;
        p_prev = p;
        p = p_next;
    }
    return p;
}

double carleman_sum(const TridiagonalMatrix& J) {
    double s = 0.0;
    for (double b : J.offdiag()) s += 1.0 / b;
    return s;
}

Complex stieltjes_cf(const TridiagonalMatrix& J, Complex z, Complex tail) {
    if (z.imag() == 0.0)
        throw std::invalid_argument("stieltjes_cf: z must be non-real");
    const auto& a = J.diag();
    const auto& b = J.offdiag();
    const std::size_t n = a.size();
    Complex w = z - a[n - 1] - tail;
    for (std::size_t i1 = n - 1; i1-- > 0;) {
        if (std::abs(w) < 1e-300)
            throw ContinuedFractionError("stieltjes_cf: vanishing partial denominator");
        w = z - a[i1] - b[i1] * b[i1] / w;
    }
    if (std::abs(w) < 1e-300)
        throw ContinuedFractionError("stieltjes_cf: vanishing partial denominator");
    return 1.0 / w;
}

Complex self_consistent_tail(double a, double b, Complex z) {
    const Complex w = z - a;
    Complex s = std::sqrt(w * w - 4.0 * b * b);
    // Root with t -> 0 at infinity and sign(Im t) opposite to sign(Im z).
    if (z.imag() > 0.0) {
        if (s.imag() < 0.0) s = -s;
    } else if (z.imag() < 0.0) {
        if (s.imag() > 0.0) s = -s;
    } else if (s.real() * w.real() < 0.0) {
        s = -s;
    }
    return 0.5 * (w - s);
}

DensityGrid density_from_cf(const TridiagonalMatrix& J, const GridSpec& grid, double epsilon,
                            CfTail tail, double target_mass, double mass_tol) {
    if (!(epsilon > 0.0))
        throw std::invalid_argument("density_from_cf: epsilon must be positive");
    if (grid.n_points < 2)
        throw std::invalid_argument("density_from_cf: need at least 2 grid points");
    const double a_tail = J.diag().back();
    const double b_tail = J.offdiag().empty() ? 0.0 : J.offdiag().back();
    const double h = (grid.x_max - grid.x_min) / (grid.n_points - 1);
    std::vector<double> vals(static_cast<std::size_t>(grid.n_points));
    for (int i = 0; i < grid.n_points; ++i) {
        const Complex z(grid.x_min + h * i, epsilon);
        Complex t(0.0, 0.0);
        if (tail == CfTail::self_consistent && b_tail > 0.0)
            t = self_consistent_tail(a_tail, b_tail, z);
        const Complex m = stieltjes_cf(J, z, t);
        vals[static_cast<std::size_t>(i)] = std::max(0.0, -m.imag() / 3.14159265358979323846);
    }
    return DensityGrid(grid.x_min, grid.x_max, std::move(vals), target_mass, mass_tol);
}

MomentRecovery moments_to_jacobi(const MomentVector& m) {
    const std::size_t len = m.size();
    if (len < 2)
        throw std::invalid_argument("moments_to_jacobi: need at least m0 and m1");
    const int k = static_cast<int>(len / 2);

    // Unmodified Chebyshev algorithm (Gautschi 1982) in long double.
    // sig_prev = sigma_{j-1,*}, sig_pprev = sigma_{j-2,*}, indexed by l.
    std::vector<long double> sig_pprev(len, 0.0L), sig_prev(len), sig(len, 0.0L);
    for (std::size_t l = 0; l < len; ++l) sig_prev[l] = static_cast<long double>(m[l]);

    std::vector<double> a, b;
    a.push_back(m[1]); // alpha_0 = m1 / m0, m0 == 1
    long double alpha_prev = static_cast<long double>(m[1]);
    long double beta_prev = 1.0L;

    const long double scale = std::max<long double>(1.0L, len >= 3 ? std::abs(static_cast<long double>(m[2])) : 1.0L);

    int achieved = 1;
    for (int j = 1; j < k; ++j) {
        std::fill(sig.begin(), sig.end(), 0.0L);
        for (std::size_t l = static_cast<std::size_t>(j); l + static_cast<std::size_t>(j) < len; ++l)
            sig[l] = sig_prev[l + 1] - alpha_prev * sig_prev[l] - beta_prev * sig_pprev[l];

        const long double denom_prev = sig_prev[static_cast<std::size_t>(j - 1)];
        const long double denom = sig[static_cast<std::size_t>(j)];
        const long double beta_j = denom / denom_prev;
        if (!(beta_j > 1e-12L * scale) || !std::isfinite(static_cast<double>(beta_j)))
            break; // Hankel near-singularity: fewer support points than requested.

        const long double alpha_j =
            sig[static_cast<std::size_t>(j) + 1] / denom - sig_prev[static_cast<std::size_t>(j)] / denom_prev;

        a.push_back(static_cast<double>(alpha_j));
        b.push_back(std::sqrt(static_cast<double>(beta_j)));
        achieved = j + 1;

        sig_pprev = sig_prev;
        sig_prev = sig;
        alpha_prev = alpha_j;
        beta_prev = beta_j;
    }

    return MomentRecovery{RecurrenceCoefficients(std::move(a), std::move(b)), k, achieved};
}

void write_matrix_csv(std::ostream& os, const TridiagonalMatrix& J,
                      const std::vector<std::string>& comments) {
    for (const auto& line : comments) os << "# " << line << "\n";
    os << "a,b\n";
    for (std::size_t i = 0; i < J.size(); ++i) {
        os << format_g17(J.diag()[i]) << ',';
        if (i + 1 < J.size()) os << format_g17(J.offdiag()[i]);
        os << '\n';
    }
}

TridiagonalMatrix read_matrix_csv(std::istream& is) {
    std::vector<double> a, b;
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("matrix CSV: expected two columns");
        a.push_back(std::stod(line.substr(0, comma)));
        const std::string bs = line.substr(comma + 1);
        if (!bs.empty()) b.push_back(std::stod(bs));
    }
    if (!header_seen || a.empty())
        throw std::invalid_argument("matrix CSV: no data");
    return TridiagonalMatrix(std::move(a), std::move(b));
}

} // namespace betaspec
