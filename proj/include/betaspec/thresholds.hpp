#pragma once

namespace betaspec::thresholds {

// Pre-registered statistical thresholds. Mean comparisons use standard
// error bands; KS thresholds were fixed from pilot runs before the test
// suite was frozen and are never adjusted inside a run.

inline constexpr double se_band = 4.0;       ///< Monte Carlo mean vs reference
inline constexpr double dp_mean_band = 3.0;  ///< DP mean-property checks

inline constexpr double ks_dp_limit = 0.03;       ///< two-sample, 5e3 per side
inline constexpr double ks_empirical = 0.02;      ///< trial-averaged KS at N = 400
inline constexpr double ks_weight_law = 0.02;     ///< one-sample, 1e4 draws
inline constexpr double ks_entries = 0.03;        ///< two-sample entry laws, 1e4 draws

inline constexpr double ks_monotone_slack = 0.01;         ///< two-sample KS grids
inline constexpr double empirical_monotone_slack_se = 1.0; ///< in combined SE units

inline constexpr double truncation_stability = 1e-3; ///< depth-doubling drift

} // namespace betaspec::thresholds
