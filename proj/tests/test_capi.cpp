#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "betaspec.h"

namespace {

std::string temp_path(const char* name) {
    return std::string("capi_test_") + name;
}

} // namespace

TEST_CASE("version and error strings are always available") {
    CHECK(std::string(bs_version()) == "0.1.0");
    CHECK(bs_last_error() != nullptr);
}

TEST_CASE("rng handles: create, split, reproduce") {
    bs_rng* a = nullptr;
    bs_rng* b = nullptr;
    REQUIRE(bs_rng_create(42, &a) == BS_OK);
    REQUIRE(bs_rng_create(42, &b) == BS_OK);

    bs_ensemble_params params{BS_GAUSSIAN, 1.0, 1.0, 1.0, 1.0};
    bs_matrix* ma = nullptr;
    bs_matrix* mb = nullptr;
    REQUIRE(bs_sample_ensemble(a, &params, 5, 0, &ma) == BS_OK);
    REQUIRE(bs_sample_ensemble(b, &params, 5, 0, &mb) == BS_OK);
    double da[5], ea[4], db[5], eb[4];
    REQUIRE(bs_matrix_copy_data(ma, da, ea) == BS_OK);
    REQUIRE(bs_matrix_copy_data(mb, db, eb) == BS_OK);
    for (int i = 0; i < 5; ++i) CHECK(da[i] == db[i]);
    for (int i = 0; i < 4; ++i) CHECK(ea[i] == eb[i]);

    bs_rng* split_a = nullptr;
    bs_rng* split_b = nullptr;
    REQUIRE(bs_rng_split(a, 7, &split_a) == BS_OK);
    REQUIRE(bs_rng_split(b, 7, &split_b) == BS_OK);
    bs_matrix* msa = nullptr;
    bs_matrix* msb = nullptr;
    REQUIRE(bs_sample_ensemble(split_a, &params, 3, 0, &msa) == BS_OK);
    REQUIRE(bs_sample_ensemble(split_b, &params, 3, 0, &msb) == BS_OK);
    double dsa[3], esa[2], dsb[3], esb[2];
    REQUIRE(bs_matrix_copy_data(msa, dsa, esa) == BS_OK);
    REQUIRE(bs_matrix_copy_data(msb, dsb, esb) == BS_OK);
    for (int i = 0; i < 3; ++i) CHECK(dsa[i] == dsb[i]);

    bs_matrix_free(ma);
    bs_matrix_free(mb);
    bs_matrix_free(msa);
    bs_matrix_free(msb);
    bs_rng_free(split_a);
    bs_rng_free(split_b);
    bs_rng_free(a);
    bs_rng_free(b);
}

TEST_CASE("matrix lifecycle, moments and spectral measure") {
    // Free-matrix truncation: even moments are Catalan numbers.
    const double diag[4] = {0.0, 0.0, 0.0, 0.0};
    const double offdiag[3] = {1.0, 1.0, 1.0};
    bs_matrix* m = nullptr;
    REQUIRE(bs_matrix_create(diag, 4, offdiag, &m) == BS_OK);
    CHECK(bs_matrix_size(m) == 4);

    double m4 = 0.0;
    REQUIRE(bs_matrix_moment(m, 4, &m4) == BS_OK);
    CHECK(m4 == 2.0);

    double moments[8];
    REQUIRE(bs_matrix_moments(m, 8, moments) == BS_OK);
    CHECK(moments[0] == 1.0);
    CHECK(moments[2] == 1.0);
    CHECK(moments[6] == 5.0);

    bs_measure* sp = nullptr;
    REQUIRE(bs_spectral_measure(m, &sp) == BS_OK);
    CHECK(bs_measure_size(sp) == 4);
    std::vector<double> locs(4), w(4);
    REQUIRE(bs_measure_copy_data(sp, locs.data(), w.data()) == BS_OK);
    double wsum = 0.0;
    for (double wi : w) wsum += wi;
    CHECK(std::abs(wsum - 1.0) < 1e-12);
    double F = 0.0;
    REQUIRE(bs_measure_cdf_at(sp, 0.0, &F) == BS_OK);
    CHECK(F == doctest::Approx(0.5));

    // Moments invert back to the coefficients.
    int achieved = 0;
    bs_matrix* rec = nullptr;
    REQUIRE(bs_moments_to_matrix(moments, 8, &achieved, &rec) == BS_OK);
    CHECK(achieved == 4);
    double rd[4], re[3];
    REQUIRE(bs_matrix_copy_data(rec, rd, re) == BS_OK);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(rd[i]) < 1e-10);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(re[i] - 1.0) < 1e-10);

    bs_matrix_free(rec);
    bs_measure_free(sp);
    bs_matrix_free(m);
}

TEST_CASE("error paths set codes and messages") {
    bs_matrix* m = nullptr;
    const double diag[2] = {0.0, 0.0};
    const double bad_off[1] = {-1.0};
    CHECK(bs_matrix_create(diag, 2, bad_off, &m) == BS_ERR_INVALID);
    CHECK(std::string(bs_last_error()).find("positive") != std::string::npos);

    CHECK(bs_matrix_read_csv("definitely_missing_file.csv", &m) == BS_ERR_IO);

    bs_rng* rng = nullptr;
    REQUIRE(bs_rng_create(1, &rng) == BS_OK);
    bs_ensemble_params params{BS_LAGUERRE, 1.0, -2.0, 1.0, 1.0};
    CHECK(bs_sample_ensemble(rng, &params, 5, 0, &m) == BS_ERR_INVALID);

    bs_report* rep = nullptr;
    const double z_re[1] = {2.0};
    const double z_im_zero[1] = {0.0};
    const double eigs[2] = {0.0, 1.0};
    CHECK(bs_mkr_check_finite(rng, eigs, 2, 1.0, "arctan", z_re, z_im_zero, 1, 10000, 1,
                              &rep) == BS_ERR_INVALID);
    CHECK(bs_mkr_check_finite(rng, eigs, 2, 1.0, "nope", z_re, z_im_zero, 1, 10000, 1, &rep) ==
          BS_ERR_INVALID);
    bs_rng_free(rng);
}

TEST_CASE("csv round trip through the filesystem") {
    const double diag[3] = {0.25, -1.5, 3.75};
    const double offdiag[2] = {0.5, 2.25};
    bs_matrix* m = nullptr;
    REQUIRE(bs_matrix_create(diag, 3, offdiag, &m) == BS_OK);
    const std::string path = temp_path("matrix.csv");
    const char* comments[2] = {"seed: 9", "demo"};
    REQUIRE(bs_matrix_write_csv(m, path.c_str(), comments, 2) == BS_OK);

    bs_matrix* back = nullptr;
    REQUIRE(bs_matrix_read_csv(path.c_str(), &back) == BS_OK);
    double d[3], e[2];
    REQUIRE(bs_matrix_copy_data(back, d, e) == BS_OK);
    for (int i = 0; i < 3; ++i) CHECK(d[i] == diag[i]);
    for (int i = 0; i < 2; ++i) CHECK(e[i] == offdiag[i]);
    bs_matrix_free(back);
    bs_matrix_free(m);
    std::remove(path.c_str());
}

TEST_CASE("limit densities and DP sampling through the C surface") {
    bs_density* rho = nullptr;
    REQUIRE(bs_density_rho_c(1.0, -6.0, 6.0, 1201, 1e-3, &rho) == BS_OK);
    CHECK(bs_density_size(rho) == 1201);
    double mass = 0.0;
    REQUIRE(bs_density_mass(rho, &mass) == BS_OK);
    CHECK(std::abs(mass - 1.0) < 1e-4); // the standard tabulation window

    bs_rng* rng = nullptr;
    REQUIRE(bs_rng_create(11, &rng) == BS_OK);
    bs_measure* dp = nullptr;
    double trunc = 1.0;
    REQUIRE(bs_dp_sample_from_density(rng, rho, 1.0, 1e-8, &trunc, &dp) == BS_OK);
    CHECK(trunc <= 1e-8);
    double F = 0.0;
    REQUIRE(bs_measure_cdf_at(dp, 100.0, &F) == BS_OK);
    CHECK(F == doctest::Approx(1.0).epsilon(1e-12));
    bs_measure_free(dp);
    bs_density_free(rho);
    bs_rng_free(rng);
}

TEST_CASE("reports come back as JSON with a pass flag") {
    bs_rng* rng = nullptr;
    REQUIRE(bs_rng_create(5, &rng) == BS_OK);
    const double eigs[5] = {-2.0, -1.0, 0.0, 1.0, 2.0};
    const double z_re[2] = {3.0, 0.0};
    const double z_im[2] = {1.0, 2.0};
    bs_report* rep = nullptr;
    REQUIRE(bs_mkr_check_finite(rng, eigs, 5, 1.5, "arctan", z_re, z_im, 2, 50000, 2, &rep) ==
            BS_OK);
    CHECK(bs_report_passed(rep) == 1);
    const std::string json = bs_report_json(rep);
    CHECK(json.find("\"rows\"") != std::string::npos);
    CHECK(json.find("\"lhs_re\"") != std::string::npos);
    bs_report_free(rep);

    bs_ensemble_params params{BS_GAUSSIAN, 2.0, 1.0, 1.0, 1.0};
    bs_report* law = nullptr;
    REQUIRE(bs_check_weight_law(rng, &params, 2, 4000, 2, &law) == BS_OK);
    CHECK(bs_report_passed(law) == 1);
    bs_report_free(law);
    bs_rng_free(rng);
}
