#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace betaspec {

using Complex = std::complex<double>;

/// Finite atomic probability measure. Locations are strictly increasing
/// after construction; exact-duplicate locations are merged by summing
/// weights; weights are nonnegative and sum to 1.
class DiscreteMeasure {
public:
    /// Build from raw (location, weight) pairs: sorts, merges ties
    /// (exact bit equality only) and normalizes to total mass 1.
    static DiscreteMeasure from_atoms(std::vector<std::pair<double, double>> raw);

    [[nodiscard]] std::size_t size() const { return locations_.size(); }
    [[nodiscard]] const std::vector<double>& locations() const { return locations_; }
    [[nodiscard]] const std::vector<double>& weights() const { return weights_; }

    /// P((-inf, x]); right-continuous, so an atom at x counts.
    [[nodiscard]] double cdf_at(double x) const;

    /// Integral of f against the measure.
    [[nodiscard]] double integrate(const std::function<double(double)>& f) const;

    /// Raw power moment.
    [[nodiscard]] double moment(int n) const;

private:
    std::vector<double> locations_;
    std::vector<double> weights_;
};

/// Tabulated nonnegative density on a uniform grid with trapezoid
/// quadrature semantics. Construction checks the trapezoid mass against
/// the declared target.
class DensityGrid {
public:
    DensityGrid(double x_min, double x_max, std::vector<double> values,
                double target_mass = 1.0, double mass_tol = 1e-3);

    [[nodiscard]] double x_min() const { return x_min_; }
    [[nodiscard]] double x_max() const { return x_max_; }
    [[nodiscard]] std::size_t n_points() const { return values_.size(); }
    [[nodiscard]] double dx() const;
    [[nodiscard]] double x_at(std::size_t i) const;
    [[nodiscard]] const std::vector<double>& values() const { return values_; }
    [[nodiscard]] double target_mass() const { return target_mass_; }

    /// Trapezoid rule for the plain mass integral.
    [[nodiscard]] double mass() const;

private:
    double x_min_, x_max_;
    std::vector<double> values_;
    double target_mass_;
};

/// Trapezoid-rule approximation of the integral of f(x) * g(x) over the
/// grid window. Throws if f is non-finite at any grid point.
double integrate_density(const DensityGrid& g, const std::function<double(double)>& f);

/// Raw moment sequence m[0..K] with m[0] = 1. Construction enforces the
/// order-2 Hankel necessary condition m0*m2 - m1^2 >= -1e-10.
class MomentVector {
public:
    explicit MomentVector(std::vector<double> m);

    [[nodiscard]] std::size_t size() const { return m_.size(); }
    [[nodiscard]] double operator[](std::size_t k) const { return m_[k]; }
    [[nodiscard]] const std::vector<double>& values() const { return m_; }

private:
    std::vector<double> m_;
};

/// Monotone CDF table on a strictly increasing abscissa grid, with
/// piecewise-linear interpolation both ways. Used for limit-law CDFs
/// and for inverse-CDF sampling of tabulated base distributions.
class CdfTable {
public:
    CdfTable(std::vector<double> x, std::vector<double> cdf);

    /// Cumulative trapezoid integral of a density grid, rescaled so the
    /// last entry is exactly 1.
    static CdfTable from_density(const DensityGrid& g);

    [[nodiscard]] const std::vector<double>& x() const { return x_; }
    [[nodiscard]] const std::vector<double>& cdf() const { return cdf_; }

    [[nodiscard]] double value(double x) const;
    /// Generalized inverse at u in [0,1].
    [[nodiscard]] double quantile(double u) const;

private:
    std::vector<double> x_;
    std::vector<double> cdf_;
};

// CSV serialization. Values are written with 17 significant digits so
// doubles round-trip exactly. Leading lines starting with '#' carry
// caller-provided metadata and are skipped on read.
void write_measure_csv(std::ostream& os, const DiscreteMeasure& m,
                       const std::vector<std::string>& comments = {});
DiscreteMeasure read_measure_csv(std::istream& is);
void write_density_csv(std::ostream& os, const DensityGrid& g,
                       const std::vector<std::string>& comments = {});
DensityGrid read_density_csv(std::istream& is, double target_mass, double mass_tol);

/// printf "%.17g" as a std::string; shared by all CSV writers.
std::string format_g17(double v);

} // namespace betaspec
