#include "betaspec/dirichlet_process.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "betaspec/parallel.hpp"
#include "betaspec/sampling.hpp"

#include "json.hpp"

namespace betaspec {

BaseSampler make_base_sampler(const DiscreteMeasure& base) {
    // Cumulative weights once; inverse CDF per draw.
    std::vector<double> cum(base.size());
    double s = 0.0;
    for (std::size_t i = 0; i < base.size(); ++i) {
        s += base.weights()[i];
        cum[i] = s;
    }
    const std::vector<double> locs = base.locations();
    return [cum, locs](RngStream& rng) {
        const double u = rng.uniform01();
        const auto it = std::lower_bound(cum.begin(), cum.end(), u);
        const std::size_t i = std::min<std::size_t>(
            static_cast<std::size_t>(it - cum.begin()), locs.size() - 1);
        return locs[i];
    };
}

BaseSampler make_base_sampler(const CdfTable& base) {
    return [base](RngStream& rng) { return base.quantile(rng.uniform01()); };
}

DPSample sample_dirichlet_process(RngStream& rng, const BaseSampler& base, double c,
                                  double mass_tol) {
    if (!(c > 0.0)) throw std::invalid_argument("sample_dirichlet_process: c must be positive");
    if (!(mass_tol > 0.0) || !(mass_tol < 1.0))
        throw std::invalid_argument("sample_dirichlet_process: mass_tol must lie in (0,1)");

    std::vector<std::pair<double, double>> atoms;
    double remaining = 1.0;
    for (long k = 0; remaining >= mass_tol; ++k) {
        if (k > 100000000L)
            throw std::runtime_error("sample_dirichlet_process: stick budget exhausted");
        const double stick = -std::expm1(std::log(rng.uniform01()) / c); // Beta(1, c)
        atoms.emplace_back(base(rng), stick * remaining);
        remaining *= 1.0 - stick;
    }
    const double truncation_error = remaining;
    atoms.emplace_back(base(rng), remaining);
    return DPSample{DiscreteMeasure::from_atoms(std::move(atoms)), truncation_error};
}

DiscreteMeasure attach_dirichlet_weights(RngStream& rng, const std::vector<double>& locations,
                                         double c) {
    if (locations.empty())
        throw std::invalid_argument("attach_dirichlet_weights: empty support");
    const int n = static_cast<int>(locations.size());
    const std::vector<double> w = sample_dirichlet_symmetric(rng, n, c / n);
    std::vector<std::pair<double, double>> atoms(locations.size());
    for (std::size_t i = 0; i < locations.size(); ++i) atoms[i] = {locations[i], w[i]};
    return DiscreteMeasure::from_atoms(std::move(atoms));
}

const TestFunction& test_function(const std::string& name, bool allow_unbounded) {
    static const std::vector<TestFunction> registry = {
        {"arctan", [](double x) { return std::atan(x); }, true},
        {"rational", [](double x) { return x / (1.0 + x * x); }, true},
        {"step", [](double x) { return 0.5 * (1.0 + std::tanh(2.0 * x)); }, true},
        {"id", [](double x) { return x; }, false},
    };
    for (const auto& f : registry) {
        if (f.name == name) {
            if (!f.bounded && !allow_unbounded)
                throw std::invalid_argument(
                    "test_function: '" + name +
                    "' is unbounded; pass allow_unbounded for compactly supported laws");
            return f;
        }
    }
    throw std::invalid_argument("test_function: unknown name '" + name + "'");
}

std::vector<std::string> test_function_names() {
    return {"arctan", "rational", "step", "id"};
}

Complex complex_power_neg(Complex w, double c) {
    return std::exp(-c * std::log(w));
}

namespace {

struct ComplexMoments {
    Complex mean;
    double se_re;
    double se_im;
};

// Compensated (Neumaier) sum.
double stable_sum(const std::vector<double>& v) {
    double s = 0.0, comp = 0.0;
    for (double x : v) {
        const double t = s + x;
        comp += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
        s = t;
    }
    return s + comp;
}

ComplexMoments summarize(const std::vector<double>& re, const std::vector<double>& im) {
    const double n = static_cast<double>(re.size());
    const double mean_re = stable_sum(re) / n;
    const double mean_im = stable_sum(im) / n;
    std::vector<double> dev(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) dev[i] = (re[i] - mean_re) * (re[i] - mean_re);
    const double var_re = stable_sum(dev) / (n - 1.0);
    for (std::size_t i = 0; i < im.size(); ++i) dev[i] = (im[i] - mean_im) * (im[i] - mean_im);
    const double var_im = stable_sum(dev) / (n - 1.0);
    return {Complex(mean_re, mean_im), std::sqrt(var_re / n), std::sqrt(var_im / n)};
}

MkrRow make_row(Complex z, const ComplexMoments& lhs, Complex rhs) {
    MkrRow row;
    row.z = z;
    row.lhs = lhs.mean;
    row.se_re = lhs.se_re;
    row.se_im = lhs.se_im;
    row.rhs = rhs;
    const double scale = std::max({1.0, std::abs(rhs.real()), std::abs(rhs.imag())});
    const double floor_re = std::max(lhs.se_re, 1e-14 * scale);
    const double floor_im = std::max(lhs.se_im, 1e-14 * scale);
    row.dev_re_se = std::abs(lhs.mean.real() - rhs.real()) / floor_re;
    row.dev_im_se = std::abs(lhs.mean.imag() - rhs.imag()) / floor_im;
    row.pass = row.dev_re_se <= 4.0 && row.dev_im_se <= 4.0;
    return row;
}

// Draw M values of X once, then form every per-z mean of (z - X)^{-c}.
MkrReport check_rows(RngStream& rng, const std::function<double(RngStream&)>& inner_product,
                     const std::vector<Complex>& z_list, double c,
                     const std::function<Complex(Complex)>& rhs_of_z, long M, int threads) {
    if (M < 1000) throw std::invalid_argument("markov_krein check: need M >= 1000");
    std::vector<double> x(static_cast<std::size_t>(M));
    parallel_for(x.size(), threads, [&](std::size_t i) {
        RngStream sub = rng.split(i);
        x[i] = inner_product(sub);
    });

    MkrReport report;
    report.pass = true;
    std::vector<double> re(x.size()), im(x.size());
    for (Complex z : z_list) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            const Complex p = complex_power_neg(z - x[i], c);
            re[i] = p.real();
            im[i] = p.imag();
        }
        const MkrRow row = make_row(z, summarize(re, im), rhs_of_z(z));
        report.pass = report.pass && row.pass;
        report.rows.push_back(row);
    }
    return report;
}

} // namespace

MonteCarloComplex markov_krein_lhs(RngStream& rng,
                                   const std::function<double(RngStream&)>& inner_product,
                                   Complex z, double c, long M, int threads) {
    if (z.imag() == 0.0) throw std::invalid_argument("markov_krein_lhs: z must be non-real");
    if (M < 1000) throw std::invalid_argument("markov_krein_lhs: need M >= 1000");
    std::vector<double> re(static_cast<std::size_t>(M)), im(static_cast<std::size_t>(M));
    parallel_for(re.size(), threads, [&](std::size_t i) {
        RngStream sub = rng.split(i);
        const Complex p = complex_power_neg(z - inner_product(sub), c);
        re[i] = p.real();
        im[i] = p.imag();
    });
    const ComplexMoments m = summarize(re, im);
    return {m.mean, m.se_re, m.se_im};
}

Complex markov_krein_rhs(const DiscreteMeasure& base, const std::function<double(double)>& f,
                         Complex z, double c) {
    if (z.imag() == 0.0) throw std::invalid_argument("markov_krein_rhs: z must be non-real");
    Complex acc(0.0, 0.0);
    for (std::size_t i = 0; i < base.size(); ++i)
        acc += base.weights()[i] * std::log(z - f(base.locations()[i]));
    return std::exp(-c * acc);
}

Complex markov_krein_rhs(const DensityGrid& base, const std::function<double(double)>& f,
                         Complex z, double c) {
    if (z.imag() == 0.0) throw std::invalid_argument("markov_krein_rhs: z must be non-real");
    const double re = integrate_density(base, [&](double u) { return std::log(z - f(u)).real(); });
    const double im = integrate_density(base, [&](double u) { return std::log(z - f(u)).imag(); });
    // The tabulated window may carry slightly less than unit mass; use
    // the actual mass so the log-integral is against a probability law.
    const double mass = base.mass();
    return std::exp(-c * Complex(re, im) / mass);
}

MkrReport markov_krein_check_finite(RngStream& rng, const std::vector<double>& eigenvalues,
                                    double c, const TestFunction& f,
                                    const std::vector<Complex>& z_list, long M, int threads) {
    if (eigenvalues.empty())
        throw std::invalid_argument("markov_krein_check_finite: empty support");
    const std::vector<double> locs = eigenvalues;
    const double n = static_cast<double>(locs.size());
    auto inner = [locs, c, &f](RngStream& sub) {
        const DiscreteMeasure m = attach_dirichlet_weights(sub, locs, c);
        return m.integrate(f.fn);
    };
    auto rhs = [&](Complex z) {
        Complex acc(0.0, 0.0);
        for (double lam : locs) acc += std::log(z - f.fn(lam));
        return std::exp(-c * acc / n);
    };
    return check_rows(rng, inner, z_list, c, rhs, M, threads);
}

MkrReport markov_krein_check_dp(RngStream& rng, const CdfTable& base_cdf,
                                const DensityGrid& base_density, double c, const TestFunction& f,
                                const std::vector<Complex>& z_list, long M, int threads) {
    const BaseSampler base = make_base_sampler(base_cdf);
    auto inner = [base, c, &f](RngStream& sub) {
        return sample_dirichlet_process(sub, base, c).measure.integrate(f.fn);
    };
    auto rhs = [&](Complex z) { return markov_krein_rhs(base_density, f.fn, z, c); };
    return check_rows(rng, inner, z_list, c, rhs, M, threads);
}

MkrReport markov_krein_check_dp_atomic(RngStream& rng, const DiscreteMeasure& base, double c,
                                       const TestFunction& f, const std::vector<Complex>& z_list,
                                       long M, int threads) {
    const BaseSampler sampler = make_base_sampler(base);
    auto inner = [sampler, c, &f](RngStream& sub) {
        return sample_dirichlet_process(sub, sampler, c).measure.integrate(f.fn);
    };
    auto rhs = [&](Complex z) { return markov_krein_rhs(base, f.fn, z, c); };
    return check_rows(rng, inner, z_list, c, rhs, M, threads);
}

std::string MkrReport::to_json(const std::string& config_json) const {
    nlohmann::json doc;
    doc["schema_version"] = 1;
    doc["report"] = "mkr-check";
    if (!config_json.empty()) doc["config"] = nlohmann::json::parse(config_json);
    doc["pass"] = pass;
    auto& rows_json = doc["rows"];
    rows_json = nlohmann::json::array();
    for (const auto& row : rows) {
        rows_json.push_back({
            {"z_re", row.z.real()},
            {"z_im", row.z.imag()},
            {"lhs_re", row.lhs.real()},
            {"lhs_im", row.lhs.imag()},
            {"se_re", row.se_re},
            {"se_im", row.se_im},
            {"rhs_re", row.rhs.real()},
            {"rhs_im", row.rhs.imag()},
            {"dev_re_se", row.dev_re_se},
            {"dev_im_se", row.dev_im_se},
            {"pass", row.pass},
        });
    }
    return doc.dump(2);
}

} // namespace betaspec
