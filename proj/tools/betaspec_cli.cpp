// betaspec command-line tool. Talks to the library exclusively through
// the C API in betaspec.h; every run embeds its configuration and seed
// in the output and is byte-reproducible for a fixed seed, independent
// of the worker-thread count.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "betaspec.h"

namespace {

struct RngDeleter {
    void operator()(bs_rng* p) const { bs_rng_free(p); }
};
struct MatrixDeleter {
    void operator()(bs_matrix* p) const { bs_matrix_free(p); }
};
struct MeasureDeleter {
    void operator()(bs_measure* p) const { bs_measure_free(p); }
};
struct DensityDeleter {
    void operator()(bs_density* p) const { bs_density_free(p); }
};
struct ReportDeleter {
    void operator()(bs_report* p) const { bs_report_free(p); }
};

using RngPtr = std::unique_ptr<bs_rng, RngDeleter>;
using MatrixPtr = std::unique_ptr<bs_matrix, MatrixDeleter>;
using MeasurePtr = std::unique_ptr<bs_measure, MeasureDeleter>;
using DensityPtr = std::unique_ptr<bs_density, DensityDeleter>;
using ReportPtr = std::unique_ptr<bs_report, ReportDeleter>;

int exit_code(bs_status st) {
    switch (st) {
    case BS_OK: return 0;
    case BS_ERR_INVALID: return 2;
    case BS_ERR_IO: return 2;
    case BS_ERR_NUMERIC: return 4;
    }
    return 4;
}

// Evaluates an API call; on failure prints the library message and
// returns the mapped exit code from the enclosing function.
#define BS_TRY(expr)                                                   \
    do {                                                               \
        const bs_status bs_try_status = (expr);                        \
        if (bs_try_status != BS_OK) {                                  \
            std::cerr << "betaspec: " << bs_last_error() << "\n";      \
            return exit_code(bs_try_status);                           \
        }                                                              \
    } while (0)

std::vector<const char*> c_strings(const std::vector<std::string>& v) {
    std::vector<const char*> out;
    out.reserve(v.size());
    for (const auto& s : v) out.push_back(s.c_str());
    return out;
}

std::vector<std::string> header_comments(const std::string& command, std::uint64_t seed,
                                         const std::string& config) {
    std::vector<std::string> lines;
    lines.push_back(std::string("betaspec ") + bs_version());
    lines.push_back("command: " + command);
    lines.push_back("seed: " + std::to_string(seed));
    if (!config.empty()) lines.push_back("config: " + config);
    return lines;
}

int write_report(const bs_report* report, const std::string& out_path) {
    const std::string json = bs_report_json(report);
    if (out_path.empty()) {
        std::cout << json << "\n";
    } else {
        std::ofstream os(out_path);
        if (!os) {
            std::cerr << "betaspec: cannot open for writing: " << out_path << "\n";
            return 2;
        }
        os << json << "\n";
    }
    return bs_report_passed(report) ? 0 : 3;
}

struct EnsembleOptions {
    std::string kind = "gaussian";
    double c = 1.0;
    double alpha = 1.0;
    double a = 1.0;
    double b = 1.0;

    [[nodiscard]] bs_ensemble_params params() const {
        bs_ensemble_params p{};
        if (kind == "gaussian")
            p.kind = BS_GAUSSIAN;
        else if (kind == "laguerre")
            p.kind = BS_LAGUERRE;
        else
            p.kind = BS_JACOBI;
        p.c = c;
        p.alpha = alpha;
        p.a = a;
        p.b = b;
        return p;
    }

    [[nodiscard]] std::string describe() const {
        std::ostringstream os;
        os << "kind=" << kind << " c=" << c;
        if (kind == "laguerre") os << " alpha=" << alpha;
        if (kind == "jacobi") os << " a=" << a << " b=" << b;
        return os.str();
    }
};

void add_ensemble_options(CLI::App* cmd, EnsembleOptions& opts) {
    cmd->add_option("--kind", opts.kind, "gaussian | laguerre | jacobi")
        ->check(CLI::IsMember({"gaussian", "laguerre", "jacobi"}));
    cmd->add_option("--c", opts.c, "high-temperature parameter c > 0 (beta = 2c/N)");
    cmd->add_option("--alpha", opts.alpha, "Laguerre shape parameter");
    cmd->add_option("--a", opts.a, "Jacobi parameter a");
    cmd->add_option("--b", opts.b, "Jacobi parameter b");
}

std::vector<std::pair<double, double>> parse_z_list(const std::vector<std::string>& raw) {
    std::vector<std::pair<double, double>> zs;
    for (const auto& s : raw) {
        const auto comma = s.find(',');
        if (comma == std::string::npos)
            throw CLI::ValidationError("--z", "expected re,im in '" + s + "'");
        zs.emplace_back(std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1)));
    }
    return zs;
}

std::vector<double> parse_double_list(const std::string& raw) {
    std::vector<double> out;
    std::stringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stod(item));
    return out;
}

std::string sniff_csv_header(const std::string& path) {
    std::ifstream is(path);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        return line;
    }
    return "";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tridiagonal beta-ensemble models at high temperature: spectral measures, "
                 "limit densities, Dirichlet-process sampling and convergence checks"};
    app.require_subcommand(1);
    app.fallthrough(); // --seed/--threads may follow the subcommand

    std::uint64_t seed = 20240101;
    int threads = 1;
    app.add_option("--seed", seed, "64-bit RNG seed")->capture_default_str();
    app.add_option("--threads", threads, "worker threads (results do not depend on this)")
        ->capture_default_str();

    // ---------------- sample-ensemble ----------------
    auto* sample_cmd = app.add_subcommand("sample-ensemble", "draw one tridiagonal model matrix");
    EnsembleOptions sample_opts;
    add_ensemble_options(sample_cmd, sample_opts);
    int sample_N = 10;
    bool sample_limit = false;
    int sample_depth = 100;
    std::string sample_out;
    sample_cmd->add_option("--N", sample_N, "matrix size of the finite model");
    sample_cmd->add_flag("--limit", sample_limit, "sample the semi-infinite limit matrix instead");
    sample_cmd->add_option("--depth", sample_depth, "truncation depth for --limit");
    sample_cmd->add_option("--out", sample_out, "output matrix CSV")->required();

    // ---------------- spectral-measure ----------------
    auto* spec_cmd = app.add_subcommand("spectral-measure",
                                        "atoms and weights of a matrix's spectral measure");
    std::string spec_in, spec_out;
    spec_cmd->add_option("--in", spec_in, "input matrix CSV")->required();
    spec_cmd->add_option("--out", spec_out, "output measure CSV")->required();

    // ---------------- limit-density ----------------
    auto* dens_cmd = app.add_subcommand("limit-density", "tabulate a limiting spectral density");
    std::string dens_kind = "gauss";
    double dens_c = 1.0, dens_alpha = 1.0, dens_a = 1.0, dens_b = 1.0;
    double dens_xmin = -6.0, dens_xmax = 6.0, dens_mass_tol = 1e-3;
    int dens_points = 1201, dens_depth = 200, dens_trials = 2000;
    std::string dens_out, dens_cdf_out;
    dens_cmd->add_option("--kind", dens_kind, "gauss | laguerre | jacobi-mc")
        ->check(CLI::IsMember({"gauss", "laguerre", "jacobi-mc"}));
    dens_cmd->add_option("--c", dens_c, "parameter c");
    dens_cmd->add_option("--alpha", dens_alpha, "Laguerre alpha");
    dens_cmd->add_option("--a", dens_a, "Jacobi a");
    dens_cmd->add_option("--b", dens_b, "Jacobi b");
    dens_cmd->add_option("--xmin", dens_xmin, "window lower edge");
    dens_cmd->add_option("--xmax", dens_xmax, "window upper edge");
    dens_cmd->add_option("--points", dens_points, "grid size");
    dens_cmd->add_option("--mass-tol", dens_mass_tol, "allowed trapezoid-mass defect (gauss)");
    dens_cmd->add_option("--depth", dens_depth, "limit-matrix truncation (jacobi-mc)");
    dens_cmd->add_option("--trials", dens_trials, "Monte Carlo trials (jacobi-mc)");
    dens_cmd->add_option("--out", dens_out, "output density CSV")->required();
    dens_cmd->add_option("--cdf-out", dens_cdf_out,
                         "also write the estimated CDF with standard errors (jacobi-mc)");

    // ---------------- dp-sample ----------------
    auto* dp_cmd = app.add_subcommand("dp-sample", "draw one Dirichlet-process sample");
    std::string dp_base = "rho-c";
    double dp_c = 1.0, dp_base_c = 0.0, dp_mass_tol = 1e-8;
    std::string dp_out;
    dp_cmd->add_option("--base", dp_base,
                       "'rho-c' or a CSV file (measure location,weight or density x,density)");
    dp_cmd->add_option("--c", dp_c, "scaling parameter of the process");
    dp_cmd->add_option("--base-c", dp_base_c, "c of the rho-c base (defaults to --c)");
    dp_cmd->add_option("--mass-tol", dp_mass_tol, "stick-breaking truncation tolerance");
    dp_cmd->add_option("--out", dp_out, "output measure CSV")->required();

    // ---------------- mkr-check ----------------
    auto* mkr_cmd = app.add_subcommand("mkr-check", "Markov-Krein identity check");
    std::string mkr_mode = "finite";
    double mkr_c = 1.0;
    std::vector<std::string> mkr_z_raw;
    std::string mkr_f = "arctan";
    long mkr_M = 100000;
    std::string mkr_eigs = "-2,-1,0,1,2";
    std::string mkr_base;
    std::string mkr_out;
    mkr_cmd->add_option("--mode", mkr_mode, "finite | dp")
        ->check(CLI::IsMember({"finite", "dp"}));
    mkr_cmd->add_option("--c", mkr_c, "transform parameter c");
    mkr_cmd->add_option("--z", mkr_z_raw, "query point 're,im' (repeatable)");
    mkr_cmd->add_option("--f", mkr_f, "test function: arctan | rational | step")
        ->check(CLI::IsMember({"arctan", "rational", "step"}));
    mkr_cmd->add_option("--M", mkr_M, "Monte Carlo draws for the left side");
    mkr_cmd->add_option("--eigs", mkr_eigs, "comma list of fixed eigenvalues (finite mode)");
    mkr_cmd->add_option("--base", mkr_base, "density CSV for the dp base (default rho-c table)");
    mkr_cmd->add_option("--out", mkr_out, "report JSON path (default stdout)");

    // ---------------- converge-test ----------------
    auto* conv_cmd = app.add_subcommand("converge-test", "statistical convergence experiments");
    std::string experiment;
    EnsembleOptions conv_opts;
    add_ensemble_options(conv_cmd, conv_opts);
    std::vector<int> conv_N;
    int conv_trials = 0, conv_M = 0, conv_depth = 200, conv_kmax = 4, conv_entry_index = 1;
    std::string conv_f, conv_entry = "offdiag", conv_out;
    conv_cmd
        ->add_option("--experiment", experiment,
                     "empirical | dp-limit | weights | limit-dp | moments | entries | mkr")
        ->required()
        ->check(CLI::IsMember(
            {"empirical", "dp-limit", "weights", "limit-dp", "moments", "entries", "mkr"}));
    conv_cmd->add_option("--N", conv_N, "matrix sizes (repeatable)");
    conv_cmd->add_option("--trials", conv_trials, "trials per size (empirical)");
    conv_cmd->add_option("--M", conv_M, "Monte Carlo draws");
    conv_cmd->add_option("--depth", conv_depth, "limit-matrix truncation depth");
    conv_cmd->add_option("--kmax", conv_kmax, "highest moment order (moments)");
    conv_cmd->add_option("--f", conv_f, "test function name");
    conv_cmd->add_option("--entry", conv_entry, "diag | offdiag (entries)")
        ->check(CLI::IsMember({"diag", "offdiag"}));
    conv_cmd->add_option("--entry-index", conv_entry_index, "1-based entry index (entries)");
    conv_cmd->add_option("--out", conv_out, "report JSON path (default stdout)");

    // ---------------- moments ----------------
    auto* mom_cmd = app.add_subcommand("moments",
                                       "power moments of a matrix, optionally inverted back "
                                       "to recurrence coefficients");
    std::string mom_in, mom_out, mom_recover;
    int mom_count = 0;
    mom_cmd->add_option("--in", mom_in, "input matrix CSV")->required();
    mom_cmd->add_option("--count", mom_count,
                        "number of moments m_0..m_{count-1} (default 2*size)");
    mom_cmd->add_option("--out", mom_out, "output CSV k,moment")->required();
    mom_cmd->add_option("--recover", mom_recover,
                        "also invert the moments and write the recovered matrix CSV here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    RngPtr rng;
    {
        bs_rng* raw = nullptr;
        BS_TRY(bs_rng_create(seed, &raw));
        rng.reset(raw);
    }

    if (sample_cmd->parsed()) {
        const bs_ensemble_params params = sample_opts.params();
        bs_matrix* raw = nullptr;
        BS_TRY(bs_sample_ensemble(rng.get(), &params, sample_limit ? 0 : sample_N,
                                  sample_depth, &raw));
        MatrixPtr matrix(raw);
        std::ostringstream cfg;
        cfg << sample_opts.describe();
        if (sample_limit)
            cfg << " limit=true depth=" << sample_depth;
        else
            cfg << " N=" << sample_N;
        const auto comments = header_comments("sample-ensemble", seed, cfg.str());
        const auto cc = c_strings(comments);
        BS_TRY(bs_matrix_write_csv(matrix.get(), sample_out.c_str(), cc.data(),
                                   static_cast<int>(cc.size())));
        return 0;
    }

    if (spec_cmd->parsed()) {
        bs_matrix* raw_m = nullptr;
        BS_TRY(bs_matrix_read_csv(spec_in.c_str(), &raw_m));
        MatrixPtr matrix(raw_m);
        bs_measure* raw_sp = nullptr;
        BS_TRY(bs_spectral_measure(matrix.get(), &raw_sp));
        MeasurePtr sp(raw_sp);
        const auto comments = header_comments("spectral-measure", seed, "in=" + spec_in);
        const auto cc = c_strings(comments);
        BS_TRY(bs_measure_write_csv(sp.get(), spec_out.c_str(), cc.data(),
                                    static_cast<int>(cc.size())));
        return 0;
    }

    if (dens_cmd->parsed()) {
        DensityPtr density;
        std::ostringstream cfg;
        if (dens_kind == "gauss") {
            bs_density* raw = nullptr;
            BS_TRY(bs_density_rho_c(dens_c, dens_xmin, dens_xmax, dens_points, dens_mass_tol,
                                    &raw));
            density.reset(raw);
            cfg << "kind=gauss c=" << dens_c;
        } else if (dens_kind == "laguerre") {
            bs_density* raw = nullptr;
            BS_TRY(bs_density_laguerre_limit(dens_alpha, dens_c, dens_xmin, dens_xmax,
                                             dens_points, &raw));
            density.reset(raw);
            cfg << "kind=laguerre alpha=" << dens_alpha << " c=" << dens_c;
        } else {
            bs_density* raw = nullptr;
            BS_TRY(bs_density_jacobi_mc(rng.get(), dens_a, dens_b, dens_c, dens_depth,
                                        dens_trials, dens_points, threads, &raw));
            density.reset(raw);
            cfg << "kind=jacobi-mc a=" << dens_a << " b=" << dens_b << " c=" << dens_c
                << " depth=" << dens_depth << " trials=" << dens_trials;
            if (!dens_cdf_out.empty()) {
                bs_rng* cdf_rng_raw = nullptr;
                BS_TRY(bs_rng_create(seed, &cdf_rng_raw));
                RngPtr cdf_rng(cdf_rng_raw);
                const auto comments = header_comments("limit-density (cdf)", seed, cfg.str());
                const auto cc = c_strings(comments);
                BS_TRY(bs_jacobi_mc_cdf_csv(cdf_rng.get(), dens_a, dens_b, dens_c, dens_depth,
                                            dens_trials, dens_points, threads,
                                            dens_cdf_out.c_str(), cc.data(),
                                            static_cast<int>(cc.size())));
            }
        }
        cfg << " xmin=" << dens_xmin << " xmax=" << dens_xmax << " points=" << dens_points;
        const auto comments = header_comments("limit-density", seed, cfg.str());
        const auto cc = c_strings(comments);
        BS_TRY(bs_density_write_csv(density.get(), dens_out.c_str(), cc.data(),
                                    static_cast<int>(cc.size())));
        return 0;
    }

    if (dp_cmd->parsed()) {
        MeasurePtr out_measure;
        double trunc_error = 0.0;
        std::ostringstream cfg;
        cfg << "base=" << dp_base << " c=" << dp_c << " mass_tol=" << dp_mass_tol;
        if (dp_base == "rho-c") {
            const double base_c = dp_base_c > 0.0 ? dp_base_c : dp_c;
            bs_density* raw_base = nullptr;
            BS_TRY(bs_density_rho_c(base_c, -8.0, 8.0, 1601, 1e-3, &raw_base));
            DensityPtr base(raw_base);
            bs_measure* raw = nullptr;
            BS_TRY(bs_dp_sample_from_density(rng.get(), base.get(), dp_c, dp_mass_tol,
                                             &trunc_error, &raw));
            out_measure.reset(raw);
            cfg << " base_c=" << base_c;
        } else {
            const std::string header = sniff_csv_header(dp_base);
            if (header == "x,density") {
                bs_density* raw_base = nullptr;
                BS_TRY(bs_density_read_csv(dp_base.c_str(), 1.0, 5e-2, &raw_base));
                DensityPtr base(raw_base);
                bs_measure* raw = nullptr;
                BS_TRY(bs_dp_sample_from_density(rng.get(), base.get(), dp_c, dp_mass_tol,
                                                 &trunc_error, &raw));
                out_measure.reset(raw);
            } else if (header == "location,weight") {
                bs_measure* raw_base = nullptr;
                BS_TRY(bs_measure_read_csv(dp_base.c_str(), &raw_base));
                MeasurePtr base(raw_base);
                bs_measure* raw = nullptr;
                BS_TRY(bs_dp_sample_from_measure(rng.get(), base.get(), dp_c, dp_mass_tol,
                                                 &trunc_error, &raw));
                out_measure.reset(raw);
            } else {
                std::cerr << "betaspec: unrecognized base CSV header '" << header << "' in "
                          << dp_base << "\n";
                return 2;
            }
        }
        auto comments = header_comments("dp-sample", seed, cfg.str());
        std::ostringstream te;
        te.precision(17);
        te << "truncation_mass_error: " << trunc_error;
        comments.push_back(te.str());
        const auto cc = c_strings(comments);
        BS_TRY(bs_measure_write_csv(out_measure.get(), dp_out.c_str(), cc.data(),
                                    static_cast<int>(cc.size())));
        return 0;
    }

    if (mkr_cmd->parsed()) {
        auto zs = parse_z_list(mkr_z_raw);
        if (zs.empty()) zs = {{3.0, 1.0}, {0.0, 2.0}, {1.0, 1.0}};
        std::vector<double> z_re, z_im;
        for (const auto& [re, im] : zs) {
            z_re.push_back(re);
            z_im.push_back(im);
        }
        ReportPtr report;
        if (mkr_mode == "finite") {
            const std::vector<double> eigs = parse_double_list(mkr_eigs);
            bs_report* raw = nullptr;
            BS_TRY(bs_mkr_check_finite(rng.get(), eigs.data(), static_cast<int>(eigs.size()),
                                       mkr_c, mkr_f.c_str(), z_re.data(), z_im.data(),
                                       static_cast<int>(z_re.size()), mkr_M, threads, &raw));
            report.reset(raw);
        } else {
            DensityPtr base;
            if (mkr_base.empty()) {
                bs_density* raw_base = nullptr;
                BS_TRY(bs_density_rho_c(mkr_c, -8.0, 8.0, 1601, 1e-3, &raw_base));
                base.reset(raw_base);
            } else {
                bs_density* raw_base = nullptr;
                BS_TRY(bs_density_read_csv(mkr_base.c_str(), 1.0, 5e-2, &raw_base));
                base.reset(raw_base);
            }
            bs_report* raw = nullptr;
            BS_TRY(bs_mkr_check_dp(rng.get(), base.get(), mkr_c, mkr_f.c_str(), z_re.data(),
                                   z_im.data(), static_cast<int>(z_re.size()), mkr_M, threads,
                                   &raw));
            report.reset(raw);
        }
        return write_report(report.get(), mkr_out);
    }

    if (conv_cmd->parsed()) {
        const bs_ensemble_params params = conv_opts.params();
        ReportPtr report;
        if (experiment == "empirical") {
            if (conv_N.empty()) conv_N = {50, 100, 200, 400};
            if (conv_trials == 0) conv_trials = 200;
            bs_report* raw = nullptr;
            BS_TRY(bs_check_empirical(rng.get(), &params, conv_N.data(),
                                      static_cast<int>(conv_N.size()), conv_trials, threads,
                                      &raw));
            report.reset(raw);
        } else if (experiment == "dp-limit") {
            if (conv_N.empty()) conv_N = {50, 100, 200};
            if (conv_M == 0) conv_M = 5000;
            if (conv_f.empty()) conv_f = conv_opts.kind == "jacobi" ? "id" : "arctan";
            bs_report* raw = nullptr;
            BS_TRY(bs_check_dp_limit(rng.get(), &params, conv_f.c_str(), conv_N.data(),
                                     static_cast<int>(conv_N.size()), conv_M, threads, &raw));
            report.reset(raw);
        } else if (experiment == "weights") {
            const int N = conv_N.empty() ? 100 : conv_N.front();
            if (conv_M == 0) conv_M = 10000;
            bs_report* raw = nullptr;
            BS_TRY(bs_check_weight_law(rng.get(), &params, N, conv_M, threads, &raw));
            report.reset(raw);
        } else if (experiment == "limit-dp") {
            if (conv_M == 0) conv_M = 5000;
            if (conv_f.empty()) conv_f = conv_opts.kind == "jacobi" ? "id" : "arctan";
            bs_report* raw = nullptr;
            BS_TRY(bs_check_limit_dp(rng.get(), &params, conv_depth, conv_M, conv_f.c_str(),
                                     threads, &raw));
            report.reset(raw);
        } else if (experiment == "moments") {
            if (conv_M == 0) conv_M = 100000;
            bs_report* raw = nullptr;
            BS_TRY(bs_check_moments(rng.get(), conv_opts.c, conv_kmax, conv_M, threads, &raw));
            report.reset(raw);
        } else if (experiment == "entries") {
            if (conv_N.empty()) conv_N = {25, 100, 400};
            if (conv_M == 0) conv_M = 10000;
            bs_report* raw = nullptr;
            BS_TRY(bs_check_entries(rng.get(), &params, conv_entry == "offdiag" ? 1 : 0,
                                    conv_entry_index - 1, conv_N.data(),
                                    static_cast<int>(conv_N.size()), conv_M, threads, &raw));
            report.reset(raw);
        } else { // mkr
            if (conv_M == 0) conv_M = 200000;
            const std::vector<double> eigs = {-2.0, -1.0, 0.0, 1.0, 2.0};
            const std::vector<double> z_re = {3.0, 0.0, 1.0, -1.0, 0.5, -2.0};
            const std::vector<double> z_im = {1.0, 2.0, 1.0, 0.5, -2.0, -1.0};
            bs_report* raw = nullptr;
            BS_TRY(bs_mkr_check_finite(rng.get(), eigs.data(), static_cast<int>(eigs.size()),
                                       conv_opts.c, conv_f.empty() ? "arctan" : conv_f.c_str(),
                                       z_re.data(), z_im.data(), static_cast<int>(z_re.size()),
                                       conv_M, threads, &raw));
            report.reset(raw);
        }
        return write_report(report.get(), conv_out);
    }

    if (mom_cmd->parsed()) {
        bs_matrix* raw_m = nullptr;
        BS_TRY(bs_matrix_read_csv(mom_in.c_str(), &raw_m));
        MatrixPtr matrix(raw_m);
        const int size = bs_matrix_size(matrix.get());
        const int count = mom_count > 0 ? mom_count : 2 * size;
        std::vector<double> moments(static_cast<std::size_t>(count));
        BS_TRY(bs_matrix_moments(matrix.get(), count, moments.data()));

        std::ofstream os(mom_out);
        if (!os) {
            std::cerr << "betaspec: cannot open for writing: " << mom_out << "\n";
            return 2;
        }
        for (const auto& line :
             header_comments("moments", seed, "in=" + mom_in + " count=" + std::to_string(count)))
            os << "# " << line << "\n";
        os << "k,moment\n";
        for (int k = 0; k < count; ++k) {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", moments[static_cast<std::size_t>(k)]);
            os << k << ',' << buf << '\n';
        }

        if (!mom_recover.empty()) {
            int achieved = 0;
            bs_matrix* raw_rec = nullptr;
            BS_TRY(bs_moments_to_matrix(moments.data(), count, &achieved, &raw_rec));
            MatrixPtr recovered(raw_rec);
            auto comments = header_comments("moments --recover", seed, "in=" + mom_in);
            comments.push_back("achieved_depth: " + std::to_string(achieved));
            const auto cc = c_strings(comments);
            BS_TRY(bs_matrix_write_csv(recovered.get(), mom_recover.c_str(), cc.data(),
                                       static_cast<int>(cc.size())));
        }
        return 0;
    }

    std::cerr << "betaspec: no subcommand\n";
    return 2;
}
