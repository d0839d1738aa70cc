#include "betaspec.h"

#include <fstream>
#include <sstream>
#include <string>

#include "betaspec/convergence.hpp"
#include "betaspec/dirichlet_process.hpp"
#include "betaspec/ensembles.hpp"
#include "betaspec/limit_measures.hpp"
#include "betaspec/measures.hpp"
#include "betaspec/rng.hpp"
#include "betaspec/tridiag.hpp"

#include "json.hpp"

struct bs_rng {
    betaspec::RngStream stream;
};
struct bs_matrix {
    betaspec::TridiagonalMatrix m;
};
struct bs_measure {
    betaspec::DiscreteMeasure m;
};
struct bs_density {
    betaspec::DensityGrid g;
};
struct bs_report {
    std::string json;
    bool pass = false;
};

namespace {

thread_local std::string g_last_error;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <typename Fn>
bs_status guarded(Fn&& fn) {
    try {
        fn();
        return BS_OK;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return BS_ERR_INVALID;
    } catch (const IoError& e) {
        g_last_error = e.what();
        return BS_ERR_IO;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return BS_ERR_NUMERIC;
    } catch (...) {
        g_last_error = "unknown error";
        return BS_ERR_NUMERIC;
    }
}

void require(bool cond, const char* what) {
    if (!cond) throw std::invalid_argument(what);
}

std::vector<std::string> comment_vector(const char* const* comments, int n_comments) {
    std::vector<std::string> out;
    for (int i = 0; i < n_comments; ++i)
        if (comments && comments[i]) out.emplace_back(comments[i]);
    return out;
}

std::ofstream open_for_write(const char* path) {
    require(path != nullptr, "path is null");
    std::ofstream os(path);
    if (!os) throw IoError(std::string("cannot open for writing: ") + path);
    return os;
}

std::ifstream open_for_read(const char* path) {
    require(path != nullptr, "path is null");
    std::ifstream is(path);
    if (!is) throw IoError(std::string("cannot open for reading: ") + path);
    return is;
}

betaspec::EnsembleParams to_params(const bs_ensemble_params* p) {
    require(p != nullptr, "params is null");
    betaspec::EnsembleParams out;
    switch (p->kind) {
    case BS_GAUSSIAN: out.kind = betaspec::EnsembleKind::gaussian; break;
    case BS_LAGUERRE: out.kind = betaspec::EnsembleKind::laguerre; break;
    case BS_JACOBI: out.kind = betaspec::EnsembleKind::jacobi; break;
    default: throw std::invalid_argument("unknown ensemble kind");
    }
    out.c = p->c;
    out.alpha = p->alpha;
    out.a = p->a;
    out.b = p->b;
    out.validate();
    return out;
}

std::vector<int> int_vector(const int* data, int n, const char* what) {
    require(data != nullptr && n > 0, what);
    return std::vector<int>(data, data + n);
}

std::vector<betaspec::Complex> z_vector(const double* z_re, const double* z_im, int nz) {
    require(z_re != nullptr && z_im != nullptr && nz > 0, "need at least one z point");
    std::vector<betaspec::Complex> zs;
    zs.reserve(static_cast<std::size_t>(nz));
    for (int i = 0; i < nz; ++i) {
        require(z_im[i] != 0.0, "z must be non-real");
        zs.emplace_back(z_re[i], z_im[i]);
    }
    return zs;
}

bs_report* wrap_report(const betaspec::ExperimentReport& report) {
    auto* out = new bs_report;
    out->json = report.to_json();
    out->pass = report.pass;
    return out;
}

bs_report* wrap_report(const betaspec::MkrReport& report, const std::string& config_json) {
    auto* out = new bs_report;
    out->json = report.to_json(config_json);
    out->pass = report.pass;
    return out;
}

} // namespace

extern "C" {

const char* bs_version(void) { return "0.1.0"; }

const char* bs_last_error(void) { return g_last_error.c_str(); }

bs_status bs_rng_create(uint64_t seed, bs_rng** out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        *out = new bs_rng{betaspec::RngStream(seed)};
    });
}

bs_status bs_rng_split(const bs_rng* rng, uint64_t index, bs_rng** out) {
    return guarded([&] {
        require(rng != nullptr && out != nullptr, "rng/out is null");
        *out = new bs_rng{rng->stream.split(index)};
    });
}

void bs_rng_free(bs_rng* rng) { delete rng; }

bs_status bs_matrix_create(const double* diag, int n, const double* offdiag, bs_matrix** out) {
    return guarded([&] {
        require(diag != nullptr && out != nullptr, "diag/out is null");
        require(n >= 1, "matrix size must be >= 1");
        require(n == 1 || offdiag != nullptr, "offdiag is null");
        std::vector<double> d(diag, diag + n);
        std::vector<double> e;
        if (n > 1) e.assign(offdiag, offdiag + n - 1);
        *out = new bs_matrix{betaspec::TridiagonalMatrix(std::move(d), std::move(e))};
    });
}

void bs_matrix_free(bs_matrix* m) { delete m; }

int bs_matrix_size(const bs_matrix* m) {
    return m == nullptr ? 0 : static_cast<int>(m->m.size());
}

bs_status bs_matrix_copy_data(const bs_matrix* m, double* diag, double* offdiag) {
    return guarded([&] {
        require(m != nullptr && diag != nullptr, "matrix/diag is null");
        require(m->m.size() == 1 || offdiag != nullptr, "offdiag is null");
        for (std::size_t i = 0; i < m->m.size(); ++i) diag[i] = m->m.diag()[i];
        for (std::size_t i = 0; i + 1 < m->m.size(); ++i) offdiag[i] = m->m.offdiag()[i];
    });
}

bs_status bs_matrix_write_csv(const bs_matrix* m, const char* path, const char* const* comments,
                              int n_comments) {
    return guarded([&] {
        require(m != nullptr, "matrix is null");
        auto os = open_for_write(path);
        betaspec::write_matrix_csv(os, m->m, comment_vector(comments, n_comments));
        if (!os) throw IoError("write failed");
    });
}

bs_status bs_matrix_read_csv(const char* path, bs_matrix** out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        auto is = open_for_read(path);
        *out = new bs_matrix{betaspec::read_matrix_csv(is)};
    });
}

bs_status bs_matrix_moment(const bs_matrix* m, int n, double* out) {
    return guarded([&] {
        require(m != nullptr && out != nullptr, "matrix/out is null");
        *out = betaspec::matrix_moment(m->m, n);
    });
}

bs_status bs_matrix_moments(const bs_matrix* m, int count, double* out) {
    return guarded([&] {
        require(m != nullptr && out != nullptr, "matrix/out is null");
        const betaspec::MomentVector mv = betaspec::matrix_moments(m->m, count);
        for (std::size_t k = 0; k < mv.size(); ++k) out[k] = mv[k];
    });
}

bs_status bs_moments_to_matrix(const double* moments, int len, int* achieved_depth,
                               bs_matrix** out) {
    return guarded([&] {
        require(moments != nullptr && out != nullptr, "moments/out is null");
        require(len >= 2, "need at least two moments");
        const betaspec::MomentRecovery rec = betaspec::moments_to_jacobi(
            betaspec::MomentVector(std::vector<double>(moments, moments + len)));
        if (achieved_depth != nullptr) *achieved_depth = rec.achieved_depth;
        *out = new bs_matrix{rec.coefficients};
    });
}

bs_status bs_spectral_measure(const bs_matrix* m, bs_measure** out) {
    return guarded([&] {
        require(m != nullptr && out != nullptr, "matrix/out is null");
        *out = new bs_measure{betaspec::spectral_measure(m->m)};
    });
}

bs_status bs_sample_ensemble(bs_rng* rng, const bs_ensemble_params* params, int N, int depth,
                             bs_matrix** out) {
    return guarded([&] {
        require(rng != nullptr && out != nullptr, "rng/out is null");
        *out = new bs_matrix{betaspec::sample_ensemble(rng->stream, to_params(params), N, depth)};
    });
}

bs_status bs_associated_hermite(double c, int depth, bs_matrix** out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        *out = new bs_matrix{betaspec::associated_hermite_matrix(c, depth)};
    });
}

bs_status bs_associated_laguerre(double alpha, double c, int depth, bs_matrix** out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        *out = new bs_matrix{betaspec::associated_laguerre_matrix(alpha, c, depth)};
    });
}

bs_status bs_measure_create(const double* locations, const double* weights, int n,
                            bs_measure** out) {
    return guarded([&] {
        require(locations != nullptr && weights != nullptr && out != nullptr,
                "locations/weights/out is null");
        require(n >= 1, "need at least one atom");
        std::vector<std::pair<double, double>> atoms;
        atoms.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) atoms.emplace_back(locations[i], weights[i]);
        *out = new bs_measure{betaspec::DiscreteMeasure::from_atoms(std::move(atoms))};
    });
}

void bs_measure_free(bs_measure* m) { delete m; }

int bs_measure_size(const bs_measure* m) {
    return m == nullptr ? 0 : static_cast<int>(m->m.size());
}

bs_status bs_measure_copy_data(const bs_measure* m, double* locations, double* weights) {
    return guarded([&] {
        require(m != nullptr && locations != nullptr && weights != nullptr,
                "measure/locations/weights is null");
        for (std::size_t i = 0; i < m->m.size(); ++i) {
            locations[i] = m->m.locations()[i];
            weights[i] = m->m.weights()[i];
        }
    });
}

bs_status bs_measure_cdf_at(const bs_measure* m, double x, double* out) {
    return guarded([&] {
        require(m != nullptr && out != nullptr, "measure/out is null");
        *out = m->m.cdf_at(x);
    });
}

bs_status bs_measure_write_csv(const bs_measure* m, const char* path,
                               const char* const* comments, int n_comments) {
    return guarded([&] {
        require(m != nullptr, "measure is null");
        auto os = open_for_write(path);
        betaspec::write_measure_csv(os, m->m, comment_vector(comments, n_comments));
        if (!os) throw IoError("write failed");
    });
}

bs_status bs_measure_read_csv(const char* path, bs_measure** out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        auto is = open_for_read(path);
        *out = new bs_measure{betaspec::read_measure_csv(is)};
    });
}

bs_status bs_density_rho_c(double c, double x_min, double x_max, int n_points, double mass_tol,
                           bs_density** out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        *out = new bs_density{
            betaspec::rho_c_grid(c, betaspec::GridSpec{x_min, x_max, n_points}, mass_tol)};
    });
}

bs_status bs_density_laguerre_limit(double alpha, double c, double x_min, double x_max,
                                    int n_points, bs_density** out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        const betaspec::CdfTable table = betaspec::laguerre_limit_cdf(alpha, c);
        const double mass = table.value(x_max) - table.value(x_min);
        *out = new bs_density{betaspec::differentiate_cdf(
            table, betaspec::GridSpec{x_min, x_max, n_points}, mass, 5e-2)};
    });
}

bs_status bs_density_jacobi_mc(bs_rng* rng, double a, double b, double c, int depth, int trials,
                               int n_points, int threads, bs_density** out) {
    return guarded([&] {
        require(rng != nullptr && out != nullptr, "rng/out is null");
        const betaspec::EstimatedCdf est = betaspec::estimate_jacobi_limit_cdf(
            rng->stream, a, b, c, depth, trials, n_points, threads);
        *out = new bs_density{est.density(5e-2)};
    });
}

bs_status bs_jacobi_mc_cdf_csv(bs_rng* rng, double a, double b, double c, int depth, int trials,
                               int n_points, int threads, const char* path,
                               const char* const* comments, int n_comments) {
    return guarded([&] {
        require(rng != nullptr, "rng is null");
        const betaspec::EstimatedCdf est = betaspec::estimate_jacobi_limit_cdf(
            rng->stream, a, b, c, depth, trials, n_points, threads);
        auto os = open_for_write(path);
        for (const auto& line : comment_vector(comments, n_comments)) os << "# " << line << "\n";
        os << "x,cdf,se\n";
        for (std::size_t i = 0; i < est.x.size(); ++i)
            os << betaspec::format_g17(est.x[i]) << ',' << betaspec::format_g17(est.cdf[i]) << ','
               << betaspec::format_g17(est.se[i]) << '\n';
        if (!os) throw IoError("write failed");
    });
}

void bs_density_free(bs_density* d) { delete d; }

int bs_density_size(const bs_density* d) {
    return d == nullptr ? 0 : static_cast<int>(d->g.n_points());
}

bs_status bs_density_copy_data(const bs_density* d, double* x, double* values) {
    return guarded([&] {
        require(d != nullptr && x != nullptr && values != nullptr, "density/x/values is null");
        for (std::size_t i = 0; i < d->g.n_points(); ++i) {
            x[i] = d->g.x_at(i);
            values[i] = d->g.values()[i];
        }
    });
}

bs_status bs_density_mass(const bs_density* d, double* out) {
    return guarded([&] {
        require(d != nullptr && out != nullptr, "density/out is null");
        *out = d->g.mass();
    });
}

bs_status bs_density_write_csv(const bs_density* d, const char* path,
                               const char* const* comments, int n_comments) {
    return guarded([&] {
        require(d != nullptr, "density is null");
        auto os = open_for_write(path);
        betaspec::write_density_csv(os, d->g, comment_vector(comments, n_comments));
        if (!os) throw IoError("write failed");
    });
}

bs_status bs_density_read_csv(const char* path, double target_mass, double mass_tol,
                              bs_density** out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        auto is = open_for_read(path);
        *out = new bs_density{betaspec::read_density_csv(is, target_mass, mass_tol)};
    });
}

bs_status bs_dp_sample_from_density(bs_rng* rng, const bs_density* base, double c,
                                    double mass_tol, double* trunc_error, bs_measure** out) {
    return guarded([&] {
        require(rng != nullptr && base != nullptr && out != nullptr, "rng/base/out is null");
        const betaspec::BaseSampler sampler =
            betaspec::make_base_sampler(betaspec::CdfTable::from_density(base->g));
        betaspec::DPSample s =
            betaspec::sample_dirichlet_process(rng->stream, sampler, c, mass_tol);
        if (trunc_error != nullptr) *trunc_error = s.truncation_mass_error;
        *out = new bs_measure{std::move(s.measure)};
    });
}

bs_status bs_dp_sample_from_measure(bs_rng* rng, const bs_measure* base, double c,
                                    double mass_tol, double* trunc_error, bs_measure** out) {
    return guarded([&] {
        require(rng != nullptr && base != nullptr && out != nullptr, "rng/base/out is null");
        const betaspec::BaseSampler sampler = betaspec::make_base_sampler(base->m);
        betaspec::DPSample s =
            betaspec::sample_dirichlet_process(rng->stream, sampler, c, mass_tol);
        if (trunc_error != nullptr) *trunc_error = s.truncation_mass_error;
        *out = new bs_measure{std::move(s.measure)};
    });
}

bs_status bs_mkr_check_finite(bs_rng* rng, const double* eigenvalues, int n, double c,
                              const char* f_name, const double* z_re, const double* z_im, int nz,
                              long M, int threads, bs_report** out) {
    return guarded([&] {
        require(rng != nullptr && out != nullptr, "rng/out is null");
        require(eigenvalues != nullptr && n >= 1, "need at least one eigenvalue");
        require(f_name != nullptr, "f_name is null");
        const auto& f = betaspec::test_function(f_name, true);
        const betaspec::MkrReport report = betaspec::markov_krein_check_finite(
            rng->stream, std::vector<double>(eigenvalues, eigenvalues + n), c, f,
            z_vector(z_re, z_im, nz), M, threads);
        nlohmann::json cfg;
        cfg["mode"] = "finite";
        cfg["eigenvalues"] = std::vector<double>(eigenvalues, eigenvalues + n);
        cfg["c"] = c;
        cfg["f"] = f.name;
        cfg["M"] = M;
        *out = wrap_report(report, cfg.dump());
    });
}

bs_status bs_mkr_check_dp(bs_rng* rng, const bs_density* base, double c, const char* f_name,
                          const double* z_re, const double* z_im, int nz, long M, int threads,
                          bs_report** out) {
    return guarded([&] {
        require(rng != nullptr && base != nullptr && out != nullptr, "rng/base/out is null");
        require(f_name != nullptr, "f_name is null");
        const auto& f = betaspec::test_function(f_name, false);
        const betaspec::CdfTable table = betaspec::CdfTable::from_density(base->g);
        const betaspec::MkrReport report = betaspec::markov_krein_check_dp(
            rng->stream, table, base->g, c, f, z_vector(z_re, z_im, nz), M, threads);
        nlohmann::json cfg;
        cfg["mode"] = "dp";
        cfg["c"] = c;
        cfg["f"] = f.name;
        cfg["M"] = M;
        *out = wrap_report(report, cfg.dump());
    });
}

bs_status bs_check_empirical(bs_rng* rng, const bs_ensemble_params* params, const int* N_list,
                             int n_sizes, int trials, int threads, bs_report** out) {
    return guarded([&] {
        require(rng != nullptr && out != nullptr, "rng/out is null");
        *out = wrap_report(betaspec::check_empirical_convergence(
            rng->stream, to_params(params), int_vector(N_list, n_sizes, "N_list"), trials,
            threads));
    });
}

bs_status bs_check_dp_limit(bs_rng* rng, const bs_ensemble_params* params, const char* f_name,
                            const int* N_list, int n_sizes, int M, int threads, bs_report** out) {
    return guarded([&] {
        require(rng != nullptr && out != nullptr, "rng/out is null");
        require(f_name != nullptr, "f_name is null");
        *out = wrap_report(betaspec::check_dp_limit(rng->stream, to_params(params), f_name,
                                                    int_vector(N_list, n_sizes, "N_list"), M,
                                                    threads));
    });
}

bs_status bs_check_weight_law(bs_rng* rng, const bs_ensemble_params* params, int N, int M,
                              int threads, bs_report** out) {
    return guarded([&] {
        require(rng != nullptr && out != nullptr, "rng/out is null");
        *out = wrap_report(
            betaspec::check_weight_law(rng->stream, to_params(params), N, M, threads));
    });
}

bs_status bs_check_limit_dp(bs_rng* rng, const bs_ensemble_params* params, int depth, int M,
                            const char* f_name, int threads, bs_report** out) {
    return guarded([&] {
        require(rng != nullptr && out != nullptr, "rng/out is null");
        require(f_name != nullptr, "f_name is null");
        *out = wrap_report(betaspec::check_limit_spectral_vs_dp(rng->stream, to_params(params),
                                                                depth, M, f_name, threads));
    });
}

bs_status bs_check_moments(bs_rng* rng, double c, int k_max, int M, int threads,
                           bs_report** out) {
    return guarded([&] {
        require(rng != nullptr && out != nullptr, "rng/out is null");
        *out = wrap_report(
            betaspec::check_gaussian_limit_moments(rng->stream, c, k_max, M, threads));
    });
}

bs_status bs_check_entries(bs_rng* rng, const bs_ensemble_params* params, int off_diagonal,
                           int entry_index, const int* N_list, int n_sizes, int M, int threads,
                           bs_report** out) {
    return guarded([&] {
        require(rng != nullptr && out != nullptr, "rng/out is null");
        *out = wrap_report(betaspec::check_entry_convergence(
            rng->stream, to_params(params),
            betaspec::EntryRef{off_diagonal != 0, entry_index},
            int_vector(N_list, n_sizes, "N_list"), M, threads));
    });
}

const char* bs_report_json(const bs_report* r) {
    return r == nullptr ? "" : r->json.c_str();
}

int bs_report_passed(const bs_report* r) {
    return r != nullptr && r->pass ? 1 : 0;
}

void bs_report_free(bs_report* r) { delete r; }

} // extern "C"
