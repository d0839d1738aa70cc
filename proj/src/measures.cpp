#include "betaspec/measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace betaspec {

DiscreteMeasure DiscreteMeasure::from_atoms(std::vector<std::pair<double, double>> raw) {
    if (raw.empty())
        throw std::invalid_argument("DiscreteMeasure: no atoms");
    double total = 0.0;
    for (const auto& [loc, w] : raw) {
        if (!std::isfinite(loc) || !std::isfinite(w))
            throw std::invalid_argument("DiscreteMeasure: non-finite atom");
        if (w < 0.0)
            throw std::invalid_argument("DiscreteMeasure: negative weight");
        total += w;
    }
    if (!(total > 0.0))
        throw std::invalid_argument("DiscreteMeasure: total weight must be positive");

    std::sort(raw.begin(), raw.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    DiscreteMeasure m;
    for (const auto& [loc, w] : raw) {
        if (!m.locations_.empty() && loc == m.locations_.back()) {
            m.weights_.back() += w / total;
        } else {
            m.locations_.push_back(loc);
            m.weights_.push_back(w / total);
        }
    }
    return m;
}

double DiscreteMeasure::cdf_at(double x) const {
    const auto it = std::upper_bound(locations_.begin(), locations_.end(), x);
    double s = 0.0;
    for (auto w = weights_.begin(), e = weights_.begin() + (it - locations_.begin()); w != e; ++w)
        s += *w;
    return s;
}

double DiscreteMeasure::integrate(const std::function<double(double)>& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < locations_.size(); ++i)
        s += weights_[i] * f(locations_[i]);
    return s;
}

double DiscreteMeasure::moment(int n) const {
    if (n < 0) throw std::invalid_argument("DiscreteMeasure::moment: n must be >= 0");
    double s = 0.0;
    for (std::size_t i = 0; i < locations_.size(); ++i)
        s += weights_[i] * std::pow(locations_[i], n);
    return s;
}

DensityGrid::DensityGrid(double x_min, double x_max, std::vector<double> values,
                         double target_mass, double mass_tol)
    : x_min_(x_min), x_max_(x_max), values_(std::move(values)), target_mass_(target_mass) {
    if (values_.size() < 2)
        throw std::invalid_argument("DensityGrid: need at least 2 points");
    if (!(x_max_ > x_min_))
        throw std::invalid_argument("DensityGrid: x_max must exceed x_min");
    for (double v : values_) {
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument("DensityGrid: values must be finite and nonnegative");
    }
    const double m = mass();
    if (std::abs(m - target_mass_) > mass_tol) {
        std::ostringstream msg;
        msg << "DensityGrid: trapezoid mass " << m << " deviates from target "
            << target_mass_ << " by more than " << mass_tol;
        throw std::invalid_argument(msg.str());
    }
}

double DensityGrid::dx() const {
    return (x_max_ - x_min_) / static_cast<double>(values_.size() - 1);
}

double DensityGrid::x_at(std::size_t i) const {
    return x_min_ + dx() * static_cast<double>(i);
}

double DensityGrid::mass() const {
    double s = 0.5 * (values_.front() + values_.back());
    for (std::size_t i = 1; i + 1 < values_.size(); ++i) s += values_[i];
    return s * dx();
}

double integrate_density(const DensityGrid& g, const std::function<double(double)>& f) {
    const std::size_t n = g.n_points();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double fx = f(g.x_at(i));
        if (!std::isfinite(fx))
            throw std::invalid_argument("integrate_density: f non-finite on grid");
        const double term = fx * g.values()[i];
        s += (i == 0 || i + 1 == n) ? 0.5 * term : term;
    }
    return s * g.dx();
}

MomentVector::MomentVector(std::vector<double> m) : m_(std::move(m)) {
    if (m_.empty()) throw std::invalid_argument("MomentVector: empty");
    if (m_[0] != 1.0) throw std::invalid_argument("MomentVector: m[0] must equal 1");
    for (double v : m_)
        if (!std::isfinite(v)) throw std::invalid_argument("MomentVector: non-finite entry");
    if (m_.size() >= 3 && m_[0] * m_[2] - m_[1] * m_[1] < -1e-10)
        throw std::invalid_argument("MomentVector: order-2 Hankel determinant is negative");
}

CdfTable::CdfTable(std::vector<double> x, std::vector<double> cdf)
    : x_(std::move(x)), cdf_(std::move(cdf)) {
    if (x_.size() != cdf_.size() || x_.size() < 2)
        throw std::invalid_argument("CdfTable: need matching vectors of length >= 2");
    for (std::size_t i = 1; i < x_.size(); ++i) {
        if (!(x_[i] > x_[i - 1]))
            throw std::invalid_argument("CdfTable: abscissae must be strictly increasing");
        if (cdf_[i] < cdf_[i - 1])
            throw std::invalid_argument("CdfTable: cdf must be nondecreasing");
    }
}

CdfTable CdfTable::from_density(const DensityGrid& g) {
    const std::size_t n = g.n_points();
    std::vector<double> x(n), F(n);
    const double h = g.dx();
    x[0] = g.x_at(0);
    F[0] = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        x[i] = g.x_at(i);
        F[i] = F[i - 1] + 0.5 * h * (g.values()[i - 1] + g.values()[i]);
    }
    const double total = F.back();
    if (!(total > 0.0))
        throw std::invalid_argument("CdfTable::from_density: zero total mass");
    for (auto& v : F) v /= total;
    return CdfTable(std::move(x), std::move(F));
}

double CdfTable::value(double x) const {
    if (x <= x_.front()) return cdf_.front();
    if (x >= x_.back()) return cdf_.back();
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - x_.begin());
    const double t = (x - x_[i - 1]) / (x_[i] - x_[i - 1]);
    return cdf_[i - 1] + t * (cdf_[i] - cdf_[i - 1]);
}

double CdfTable::quantile(double u) const {
    if (u <= cdf_.front()) return x_.front();
    if (u >= cdf_.back()) return x_.back();
    const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    std::size_t i = static_cast<std::size_t>(it - cdf_.begin());
    if (i == 0) return x_.front();
    const double df = cdf_[i] - cdf_[i - 1];
    if (df <= 0.0) return x_[i];
    const double t = (u - cdf_[i - 1]) / df;
    return x_[i - 1] + t * (x_[i] - x_[i - 1]);
}

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void write_comments(std::ostream& os, const std::vector<std::string>& comments) {
    for (const auto& line : comments) os << "# " << line << "\n";
}

// Reads "a,b" rows, skipping '#' comments and the header line.
std::vector<std::pair<std::string, std::string>> read_two_columns(std::istream& is) {
    std::vector<std::pair<std::string, std::string>> rows;
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
            throw std::invalid_argument("CSV: expected two comma-separated columns");
        rows.emplace_back(line.substr(0, comma), line.substr(comma + 1));
    }
    if (!header_seen) throw std::invalid_argument("CSV: missing header");
    return rows;
}

double parse_double(const std::string& s) {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos != s.size()) throw std::invalid_argument("CSV: trailing characters in number");
    return v;
}

} // namespace

void write_measure_csv(std::ostream& os, const DiscreteMeasure& m,
                       const std::vector<std::string>& comments) {
    write_comments(os, comments);
    os << "location,weight\n";
    for (std::size_t i = 0; i < m.size(); ++i)
        os << format_g17(m.locations()[i]) << ',' << format_g17(m.weights()[i]) << '\n';
}

DiscreteMeasure read_measure_csv(std::istream& is) {
    std::vector<std::pair<double, double>> atoms;
    for (const auto& [a, b] : read_two_columns(is))
        atoms.emplace_back(parse_double(a), parse_double(b));
    return DiscreteMeasure::from_atoms(std::move(atoms));
}

void write_density_csv(std::ostream& os, const DensityGrid& g,
                       const std::vector<std::string>& comments) {
    write_comments(os, comments);
    os << "x,density\n";
    for (std::size_t i = 0; i < g.n_points(); ++i)
        os << format_g17(g.x_at(i)) << ',' << format_g17(g.values()[i]) << '\n';
}

DensityGrid read_density_csv(std::istream& is, double target_mass, double mass_tol) {
    std::vector<double> xs, vals;
    for (const auto& [a, b] : read_two_columns(is)) {
        xs.push_back(parse_double(a));
        vals.push_back(parse_double(b));
    }
    if (xs.size() < 2) throw std::invalid_argument("density CSV: need at least 2 rows");
    return DensityGrid(xs.front(), xs.back(), std::move(vals), target_mass, mass_tol);
}

} // namespace betaspec
