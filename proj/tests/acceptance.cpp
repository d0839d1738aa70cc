// Acceptance suite: one pass/fail line per criterion, nonzero exit if
// any fails. Every tolerance is pinned here; nothing is tuned at run
// time. Seeds are fixed so reruns are bit-reproducible.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "betaspec/convergence.hpp"
#include "betaspec/dirichlet_process.hpp"
#include "betaspec/ensembles.hpp"
#include "betaspec/limit_measures.hpp"
#include "betaspec/measures.hpp"
#include "betaspec/rng.hpp"
#include "betaspec/sampling.hpp"
#include "betaspec/thresholds.hpp"
#include "betaspec/tridiag.hpp"

using namespace betaspec;

namespace {

constexpr int kThreads = 2;
int g_failures = 0;

struct Criterion {
    const char* label;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    explicit Criterion(const char* l) : label(l) {}

    void finish(bool pass, const std::string& detail) const {
        const double sec =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %s (%.1fs) %s\n", pass ? "PASS" : "FAIL", label, sec, detail.c_str());
        std::fflush(stdout);
        if (!pass) ++g_failures;
    }
};

TridiagonalMatrix random_test_matrix(RngStream& rng, int size) {
    std::vector<double> a(static_cast<std::size_t>(size));
    std::vector<double> b(static_cast<std::size_t>(size > 0 ? size - 1 : 0));
    for (auto& v : a) v = 2.0 * rng.uniform01() - 1.0;
    for (auto& v : b) v = 0.3 + rng.uniform01();
    return TridiagonalMatrix(std::move(a), std::move(b));
}

// 1. Spectral measure reproduces every walk-count moment.
void criterion_moment_identity() {
    Criterion crit("criterion 1: moment identity, 200 matrices, n <= 12");
    RngStream rng(1001);
    double worst = 0.0;
    bool pass = true;
    for (int trial = 0; trial < 200; ++trial) {
        const int size = 2 + static_cast<int>(rng.uniform01() * 49.0);
        const TridiagonalMatrix J = random_test_matrix(rng, size);
        const DiscreteMeasure sp = spectral_measure(J);
        for (int n = 0; n <= 12; ++n) {
            const double walks = matrix_moment(J, n);
            const double spectral = sp.moment(n);
            const double rel = std::abs(walks - spectral) / std::max(1.0, std::abs(walks));
            worst = std::max(worst, rel);
            pass = pass && rel <= 1e-9;
        }
    }
    std::ostringstream d;
    d << "worst relative deviation " << worst;
    crit.finish(pass, d.str());
}

// 2. Formula route and continued-fraction route agree on rho_c; the
//    density is normalized with the exact walk-count moments.
void criterion_two_route_density() {
    Criterion crit("criterion 2: two-route rho_c agreement and moments");
    bool pass = true;
    std::ostringstream d;
    for (double c : {0.5, 1.0, 2.0}) {
        const GaussianLimitDensity eval(c);
        const TridiagonalMatrix H = associated_hermite_matrix(c, 400);
        const double b_tail = H.offdiag().back();
        double sup = 0.0;
        for (int i = 0; i <= 160; ++i) {
            const double x = -4.0 + 0.05 * i;
            const Complex z(x, 1e-3);
            const Complex tail = self_consistent_tail(0.0, b_tail, z);
            const double via_cf =
                std::max(0.0, -stieltjes_cf(H, z, tail).imag() / 3.14159265358979323846);
            sup = std::max(sup, std::abs(via_cf - eval.density(x)));
        }
        const double mass = rho_c_integral(c, [](double) { return 1.0; }, -10.0, 10.0);
        const double m2 = rho_c_integral(c, [](double x) { return x * x; }, -10.0, 10.0);
        const double m4 = rho_c_integral(c, [](double x) { return x * x * x * x; }, -10.0, 10.0);
        const double m2_exact = c + 1.0;
        const double m4_exact = (c + 1.0) * (2.0 * c + 3.0);
        const bool ok = sup <= 5e-3 && std::abs(mass - 1.0) <= 1e-5 &&
                        std::abs(m2 - m2_exact) <= 1e-4 && std::abs(m4 - m4_exact) <= 1e-3;
        pass = pass && ok;
        d << "c=" << c << ": sup=" << sup << " mass-1=" << mass - 1.0 << "; ";
    }
    crit.finish(pass, d.str());
}

// 3. Finite-support Markov-Krein identity at Monte Carlo scale, plus
//    the arcsine closed form.
void criterion_markov_krein_finite() {
    Criterion crit("criterion 3: finite-N Markov-Krein identity");
    RngStream rng(1003);
    const auto& f = test_function("arctan");
    const std::vector<Complex> zs = {Complex(3.0, 1.0),  Complex(0.0, 2.0),
                                     Complex(1.0, 1.0),  Complex(-1.0, 0.5),
                                     Complex(0.5, -2.0), Complex(-2.0, -1.0)};
    bool pass = true;
    double worst_dev = 0.0;
    int combo = 0;
    for (int N : {2, 5, 20}) {
        std::vector<double> eigs(static_cast<std::size_t>(N));
        for (int i = 0; i < N; ++i)
            eigs[static_cast<std::size_t>(i)] = N == 1 ? 0.0 : -2.0 + 4.0 * i / (N - 1);
        for (double c : {0.5, 1.0, 2.0}) {
            RngStream sub = rng.split(static_cast<std::uint64_t>(combo++));
            const MkrReport report =
                markov_krein_check_finite(sub, eigs, c, f, zs, 1000000, kThreads);
            pass = pass && report.pass;
            for (const auto& row : report.rows)
                worst_dev = std::max({worst_dev, row.dev_re_se, row.dev_im_se});
        }
    }

    // Arcsine spot check: base (delta_0 + delta_1)/2, c = 1, z = 2.
    RngStream spot(1004);
    const auto base = make_base_sampler(DiscreteMeasure::from_atoms({{0.0, 0.5}, {1.0, 0.5}}));
    const auto& id = test_function("id", true);
    auto inner = [&](RngStream& s) {
        return sample_dirichlet_process(s, base, 1.0).measure.integrate(id.fn);
    };
    const MonteCarloComplex lhs =
        markov_krein_lhs(spot, inner, Complex(2.0, 1e-9), 1.0, 1000000, kThreads);
    const double arcsine_dev = std::abs(lhs.value.real() - 1.0 / std::sqrt(2.0));
    const bool arcsine_ok = arcsine_dev <= 4.0 * lhs.se_re;
    pass = pass && arcsine_ok;

    std::ostringstream d;
    d << "worst |dev| " << worst_dev << " SE; arcsine dev " << arcsine_dev << " (4SE "
      << 4.0 * lhs.se_re << ")";
    crit.finish(pass, d.str());
}

std::string rows_summary(const ExperimentReport& report) {
    std::ostringstream d;
    for (const auto& row : report.rows) d << row.label << "=" << row.value << " ";
    return d.str();
}

// 4. Finite-model spectral measures approach the Dirichlet process.
void criterion_dp_limit() {
    Criterion crit("criterion 4: spectral measure -> DP across N (Gaussian)");
    RngStream rng(1005);
    EnsembleParams params;
    params.kind = EnsembleKind::gaussian;
    params.c = 1.0;
    const ExperimentReport report =
        check_dp_limit(rng, params, "arctan", {50, 100, 200}, 5000, kThreads);
    crit.finish(report.pass, rows_summary(report));
}

// 5. Truncated limit matrices match DP samples over the limit base for
//    all three kinds.
void criterion_limit_vs_dp() {
    Criterion crit("criterion 5: limit-matrix spectral measure vs DP (all kinds)");
    bool pass = true;
    std::ostringstream d;

    {
        RngStream rng(1006);
        EnsembleParams params;
        params.kind = EnsembleKind::gaussian;
        params.c = 1.0;
        const ExperimentReport r = check_limit_spectral_vs_dp(rng, params, 200, 5000, "arctan",
                                                              kThreads);
        pass = pass && r.pass;
        d << "gaussian: " << rows_summary(r);
    }
    {
        RngStream rng(1007);
        EnsembleParams params;
        params.kind = EnsembleKind::laguerre;
        params.alpha = 1.0;
        params.c = 1.0;
        const ExperimentReport r = check_limit_spectral_vs_dp(rng, params, 200, 5000, "arctan",
                                                              kThreads);
        pass = pass && r.pass;
        d << "| laguerre: " << rows_summary(r);
    }
    {
        RngStream rng(1008);
        EnsembleParams params;
        params.kind = EnsembleKind::jacobi;
        params.a = params.b = params.c = 1.0;
        const ExperimentReport r =
            check_limit_spectral_vs_dp(rng, params, 200, 5000, "id", kThreads);
        pass = pass && r.pass;
        d << "| jacobi: " << rows_summary(r);
    }
    crit.finish(pass, d.str());
}

// 6. First spectral weight follows Beta(c/N, c(N-1)/N), independent of
//    the eigenvalues.
void criterion_weight_law() {
    Criterion crit("criterion 6: spectral weight law and independence");
    RngStream rng(1009);
    EnsembleParams params;
    params.kind = EnsembleKind::gaussian;
    params.c = 1.0;
    const ExperimentReport report = check_weight_law(rng, params, 100, 10000, kThreads);
    crit.finish(report.pass, rows_summary(report));
}

// 7. Empirical eigenvalue distributions converge to the limit laws.
void criterion_empirical() {
    Criterion crit("criterion 7: empirical distribution -> limit law");
    bool pass = true;
    std::ostringstream d;
    {
        RngStream rng(1010);
        EnsembleParams params;
        params.kind = EnsembleKind::gaussian;
        params.c = 1.0;
        const ExperimentReport r =
            check_empirical_convergence(rng, params, {50, 100, 200, 400}, 200, kThreads);
        pass = pass && r.pass;
        d << "gaussian: " << rows_summary(r);
    }
    {
        RngStream rng(1011);
        EnsembleParams params;
        params.kind = EnsembleKind::laguerre;
        params.alpha = 1.0;
        params.c = 1.0;
        const ExperimentReport r =
            check_empirical_convergence(rng, params, {50, 100, 200, 400}, 200, kThreads);
        pass = pass && r.pass;
        d << "| laguerre: " << rows_summary(r);
    }
    crit.finish(pass, d.str());
}

// 8. Matrix entries converge in law to the limit entries.
void criterion_entries() {
    Criterion crit("criterion 8: entry laws -> limit entry laws");
    bool pass = true;
    std::ostringstream d;
    {
        RngStream rng(1012);
        EnsembleParams params;
        params.kind = EnsembleKind::gaussian;
        params.c = 1.0;
        const ExperimentReport r =
            check_entry_convergence(rng, params, EntryRef{true, 0}, {25, 100, 400}, 10000,
                                    kThreads);
        pass = pass && r.pass;
        d << "gaussian offdiag_1: " << rows_summary(r);
    }
    {
        RngStream rng(1013);
        EnsembleParams params;
        params.kind = EnsembleKind::laguerre;
        params.alpha = 1.0;
        params.c = 1.0;
        const ExperimentReport r =
            check_entry_convergence(rng, params, EntryRef{false, 0}, {25, 100, 400}, 10000,
                                    kThreads);
        pass = pass && r.pass;
        d << "| laguerre diag_1: " << rows_summary(r);
    }
    crit.finish(pass, d.str());
}

// 9. Moments invert back to recurrence coefficients.
void criterion_moment_recovery() {
    Criterion crit("criterion 9: moment -> coefficient recovery");
    RngStream rng(1014);
    bool pass = true;
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const int size = 2 + static_cast<int>(rng.uniform01() * 7.0);
        const TridiagonalMatrix J = random_test_matrix(rng, size);
        const MomentRecovery rec = moments_to_jacobi(matrix_moments(J, 2 * size));
        if (!rec.complete() || rec.coefficients.size() != J.size()) {
            pass = false;
            continue;
        }
        for (std::size_t i = 0; i < J.size(); ++i)
            worst = std::max(worst, std::abs(rec.coefficients.diag()[i] - J.diag()[i]));
        for (std::size_t i = 0; i + 1 < J.size(); ++i)
            worst = std::max(worst, std::abs(rec.coefficients.offdiag()[i] - J.offdiag()[i]));
    }
    pass = pass && worst <= 1e-8;

    // Catalan moments pin the free matrix.
    const MomentVector catalan({1.0, 0.0, 1.0, 0.0, 2.0, 0.0, 5.0, 0.0, 14.0, 0.0, 42.0, 0.0,
                                132.0, 0.0, 429.0, 0.0});
    const MomentRecovery free_rec = moments_to_jacobi(catalan);
    double catalan_worst = 0.0;
    for (double a : free_rec.coefficients.diag())
        catalan_worst = std::max(catalan_worst, std::abs(a));
    for (double b : free_rec.coefficients.offdiag())
        catalan_worst = std::max(catalan_worst, std::abs(b - 1.0));
    pass = pass && free_rec.complete() && catalan_worst <= 1e-8;

    std::ostringstream d;
    d << "worst roundtrip deviation " << worst << ", Catalan deviation " << catalan_worst;
    crit.finish(pass, d.str());
}

// 10. CLI runs are byte-identical across reruns and thread counts.
bool run_cli(const std::string& args) {
    const std::string cmd = std::string(BETASPEC_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    return std::system(cmd.c_str()) == 0;
}

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

void criterion_cli_determinism() {
    Criterion crit("criterion 10: CLI byte determinism, threads 1 vs 8");
    bool pass = true;
    std::ostringstream d;

    const std::vector<std::pair<std::string, std::string>> cases = {
        {"sample-ensemble --kind gaussian --N 25 --c 1 --seed 7 --out {}", "matrix"},
        {"sample-ensemble --kind jacobi --a 1 --b 2 --c 1 --limit --depth 30 --seed 8 --out {}",
         "jacobi"},
        {"limit-density --kind jacobi-mc --a 1 --b 1 --c 1 --depth 40 --trials 200 --points 51 "
         "--xmin 0 --xmax 1 --seed 9 --threads {T} --out {}",
         "density"},
        {"dp-sample --base rho-c --c 1 --seed 10 --out {}", "dp"},
        {"mkr-check --mode finite --c 1 --z 3,1 --M 20000 --seed 11 --threads {T} --out {}",
         "mkr"},
        {"converge-test --experiment weights --kind gaussian --c 1 --N 50 --M 2000 --seed 12 "
         "--threads {T} --out {}",
         "weights"},
    };

    int idx = 0;
    for (const auto& [tmpl, name] : cases) {
        const std::string f1 = "acc_cli_" + std::to_string(idx) + "_a.out";
        const std::string f2 = "acc_cli_" + std::to_string(idx) + "_b.out";
        ++idx;
        auto instantiate = [&](std::string t, const std::string& file, const char* threads) {
            if (auto pos = t.find("{T}"); pos != std::string::npos) t.replace(pos, 3, threads);
            const auto pos = t.find("{}");
            t.replace(pos, 2, file);
            return t;
        };
        const bool ok1 = run_cli(instantiate(tmpl, f1, "1"));
        const bool ok2 = run_cli(instantiate(tmpl, f2, "8"));
        const bool same = ok1 && ok2 && !slurp(f1).empty() && slurp(f1) == slurp(f2);
        if (!same) d << name << " differs; ";
        pass = pass && same;
        std::remove(f1.c_str());
        std::remove(f2.c_str());
    }
    if (pass) d << "all outputs byte-identical";
    crit.finish(pass, d.str());
}

} // namespace

int main() {
    std::printf("betaspec acceptance suite (threads=%d)\n", kThreads);
    criterion_moment_identity();
    criterion_two_route_density();
    criterion_markov_krein_finite();
    criterion_dp_limit();
    criterion_limit_vs_dp();
    criterion_weight_law();
    criterion_empirical();
    criterion_entries();
    criterion_moment_recovery();
    criterion_cli_determinism();
    if (g_failures > 0) {
        std::printf("%d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
