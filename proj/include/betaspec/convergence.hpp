#pragma once

#include <functional>
#include <string>
#include <vector>

#include "betaspec/dirichlet_process.hpp"
#include "betaspec/ensembles.hpp"
#include "betaspec/limit_measures.hpp"
#include "betaspec/measures.hpp"
#include "betaspec/rng.hpp"

namespace betaspec {

// Kolmogorov-Smirnov distances in the forms the experiments need.
double ks_two_sample(std::vector<double> a, std::vector<double> b);
double ks_sample_vs_cdf(std::vector<double> sample, const std::function<double(double)>& cdf);
double ks_measure_vs_cdf(const DiscreteMeasure& m, const std::function<double(double)>& cdf);
double ks_between_measures(const DiscreteMeasure& m1, const DiscreteMeasure& m2);

/// Exact L1 distance between the CDFs of two atomic measures.
double wasserstein1(const DiscreteMeasure& m1, const DiscreteMeasure& m2);

/// One reported statistic; se is 0 and exact=true for analytically
/// known rows.
struct StatisticRow {
    std::string label;
    double value = 0.0;
    double se = 0.0;
    bool exact = false;
    bool pass = true;
};

struct ExperimentReport {
    std::string name;
    std::string config_json; ///< parameter + threshold echo, serialized
    std::vector<StatisticRow> rows;
    bool monotone_required = false;
    bool monotone_ok = true;
    bool pass = false;
    double wall_seconds = 0.0; ///< diagnostic; excluded from the default serialization

    /// Full JSON document. Timing is opt-in so identical configurations
    /// serialize byte-identically.
    [[nodiscard]] std::string to_json(bool include_timing = false) const;
};

/// Trial-averaged KS between the empirical eigenvalue distribution of
/// the finite model and the limit CDF, across a ladder of sizes; passes
/// when the averages are nonincreasing (1 combined-SE slack) and the
/// final average is below the pre-registered threshold.
ExperimentReport check_empirical_convergence(RngStream& rng, const EnsembleParams& params,
                                             const std::vector<int>& N_list, int trials,
                                             int threads = 1);

/// Two-sample KS between <sp_N, f> under the finite model and <P, f>
/// under the Dirichlet process over the limit base, on a ladder of N.
ExperimentReport check_dp_limit(RngStream& rng, const EnsembleParams& params,
                                const std::string& f_name, const std::vector<int>& N_list, int M,
                                int threads = 1);

/// Marginal law of the first spectral weight against Beta(c/N,
/// c(N-1)/N), plus a weight/eigenvalue-range independence proxy.
ExperimentReport check_weight_law(RngStream& rng, const EnsembleParams& params, int N, int M,
                                  int threads = 1);

/// <nu, f> from truncated limit matrices against <DP(base, c), f>, with
/// a depth-doubling truncation-stability guard and a first-moment
/// cross-check.
ExperimentReport check_limit_spectral_vs_dp(RngStream& rng, const EnsembleParams& params,
                                            int depth, int M, const std::string& f_name,
                                            int threads = 1);

/// Monte Carlo means of <sp, x^k> against reference moments, k <= k_max.
ExperimentReport check_moment_convergence(RngStream& rng,
                                          const std::function<MomentVector(RngStream&)>& sp_moments,
                                          const MomentVector& limit_moments, int k_max, int M,
                                          int threads = 1);

/// Moment check instantiated for the Gaussian limit matrix, with exact
/// reference moments from the deterministic recurrence matrix.
ExperimentReport check_gaussian_limit_moments(RngStream& rng, double c, int k_max, int M,
                                              int threads = 1);

/// Two-sample KS between finite-model and limit-model entry laws on a
/// ladder of N.
ExperimentReport check_entry_convergence(RngStream& rng, const EnsembleParams& params,
                                         const EntryRef& entry, const std::vector<int>& N_list,
                                         int M, int threads = 1);

/// Integral of f against a tabulated CDF (midpoint Stieltjes sum).
double integrate_cdf(const CdfTable& table, const std::function<double(double)>& f);

} // namespace betaspec
