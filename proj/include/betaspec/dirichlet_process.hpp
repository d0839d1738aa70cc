#pragma once

#include <functional>
#include <string>
#include <vector>

#include "betaspec/measures.hpp"
#include "betaspec/rng.hpp"

namespace betaspec {

/// Draws one atom location from a base distribution.
using BaseSampler = std::function<double(RngStream&)>;

/// Inverse-CDF sampler over the atoms of a discrete measure.
BaseSampler make_base_sampler(const DiscreteMeasure& base);
/// Piecewise-linear inverse-CDF sampler over a tabulated CDF.
BaseSampler make_base_sampler(const CdfTable& base);

/// One truncated stick-breaking draw of a Dirichlet process.
struct DPSample {
    DiscreteMeasure measure;
    /// Stick mass still unassigned when truncation stopped; the sample
    /// attaches it to one extra base draw, so the measure has mass 1 and
    /// differs from the untruncated process by at most this amount.
    double truncation_mass_error = 0.0;
};

/// Stick-breaking sampler: sticks Beta(1, c) are broken until the
/// leftover mass drops below mass_tol, atom locations are i.i.d. draws
/// from the base, and the leftover is assigned to one extra base draw.
DPSample sample_dirichlet_process(RngStream& rng, const BaseSampler& base, double c,
                                  double mass_tol = 1e-8);

/// Random measure with the given support and an independent symmetric
/// Dirichlet(c/N) weight vector.
DiscreteMeasure attach_dirichlet_weights(RngStream& rng, const std::vector<double>& locations,
                                         double c);

/// Bounded continuous test functions usable in the weak-convergence and
/// Markov-Krein checks. "id" is unbounded on the line and is only handed
/// out when the caller acknowledges integrability via allow_unbounded
/// (it is admissible for compactly supported laws).
struct TestFunction {
    std::string name;
    std::function<double(double)> fn;
    bool bounded;
};
const TestFunction& test_function(const std::string& name, bool allow_unbounded = false);
std::vector<std::string> test_function_names();

/// Principal-branch negative power w^{-c} = exp(-c Log w); single-valued
/// here because every w = z - t has Im w of the fixed sign of Im z.
Complex complex_power_neg(Complex w, double c);

struct MonteCarloComplex {
    Complex value;
    double se_re = 0.0;
    double se_im = 0.0;
};

/// Monte Carlo estimate of E[(z - X)^{-c}] where X is drawn by
/// `inner_product`; per-trial substreams are split off `rng` by index,
/// and accumulation is compensated so the result is reproducible.
MonteCarloComplex markov_krein_lhs(RngStream& rng,
                                   const std::function<double(RngStream&)>& inner_product,
                                   Complex z, double c, long M, int threads = 1);

/// exp(-c Int log(z - f(u)) d base(u)), atom sum or grid quadrature.
Complex markov_krein_rhs(const DiscreteMeasure& base, const std::function<double(double)>& f,
                         Complex z, double c);
Complex markov_krein_rhs(const DensityGrid& base, const std::function<double(double)>& f,
                         Complex z, double c);

struct MkrRow {
    Complex z;
    Complex lhs;
    double se_re = 0.0;
    double se_im = 0.0;
    Complex rhs;
    double dev_re_se = 0.0; ///< |Re lhs - Re rhs| in SE units
    double dev_im_se = 0.0;
    bool pass = false;
};

struct MkrReport {
    std::vector<MkrRow> rows;
    bool pass = false;
    [[nodiscard]] std::string to_json(const std::string& config_json) const;
};

/// Identity E[(z - <P, f>)^{-c}] = exp(-c <L, log(z - f)>) for a measure
/// with fixed support and symmetric Dirichlet(c/N) weights; exact for
/// every N, checked by Monte Carlo on the left side.
MkrReport markov_krein_check_finite(RngStream& rng, const std::vector<double>& eigenvalues,
                                    double c, const TestFunction& f,
                                    const std::vector<Complex>& z_list, long M, int threads = 1);

/// Same check with the left side drawn from the Dirichlet process over
/// a tabulated base.
MkrReport markov_krein_check_dp(RngStream& rng, const CdfTable& base_cdf,
                                const DensityGrid& base_density, double c, const TestFunction& f,
                                const std::vector<Complex>& z_list, long M, int threads = 1);

/// Atomic-base variant (both sides exact in the degenerate cases).
MkrReport markov_krein_check_dp_atomic(RngStream& rng, const DiscreteMeasure& base, double c,
                                       const TestFunction& f, const std::vector<Complex>& z_list,
                                       long M, int threads = 1);

} // namespace betaspec
