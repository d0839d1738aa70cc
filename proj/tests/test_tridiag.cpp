#include "doctest.h"

#include <cmath>
#include <sstream>

#include "betaspec/limit_measures.hpp"
#include "betaspec/rng.hpp"
#include "betaspec/sampling.hpp"
#include "betaspec/tridiag.hpp"
#include "test_util.hpp"

using namespace betaspec;

namespace {

TridiagonalMatrix free_matrix(int depth) {
    return TridiagonalMatrix(std::vector<double>(static_cast<std::size_t>(depth), 0.0),
                             std::vector<double>(static_cast<std::size_t>(depth - 1), 1.0));
}

TridiagonalMatrix random_matrix(RngStream& rng, int size) {
    std::vector<double> a(static_cast<std::size_t>(size));
    std::vector<double> b(static_cast<std::size_t>(size - 1));
    for (auto& v : a) v = 2.0 * rng.uniform01() - 1.0;
    for (auto& v : b) v = 0.3 + rng.uniform01();
    return TridiagonalMatrix(std::move(a), std::move(b));
}

} // namespace

TEST_CASE("matrix construction enforces the standing assumptions") {
    CHECK_THROWS_AS(TridiagonalMatrix({0.0, 0.0}, {0.0}), std::invalid_argument);
    CHECK_THROWS_AS(TridiagonalMatrix({0.0, 0.0}, {-1.0}), std::invalid_argument);
    CHECK_THROWS_AS(TridiagonalMatrix({0.0, 0.0}, {1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(TridiagonalMatrix({}, {}), std::invalid_argument);
}

TEST_CASE("moments count returning walks") {
    // Free matrix: even moments are the Catalan numbers.
    const auto J = free_matrix(8);
    CHECK(matrix_moment(J, 0) == 1.0);
    CHECK(matrix_moment(J, 1) == 0.0);
    CHECK(matrix_moment(J, 2) == 1.0);
    CHECK(matrix_moment(J, 4) == 2.0);
    CHECK(matrix_moment(J, 6) == 5.0);

    // Recurrence matrix of the Gaussian limit law, c = 1.
    const auto H = associated_hermite_matrix(1.0, 8);
    CHECK(matrix_moment(H, 2) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(matrix_moment(H, 4) == doctest::Approx(10.0).epsilon(1e-15));

    CHECK_THROWS_AS(matrix_moment(J, -1), std::invalid_argument);
}

TEST_CASE("mat-vec moments agree with a dense oracle") {
    RngStream rng(17);
    for (int size : {2, 3, 5, 9}) {
        const auto J = random_matrix(rng, size);
        for (int n = 0; n <= 8; ++n) {
            const double oracle = dense_moment_oracle(J, n);
            CHECK(matrix_moment(J, n) ==
                  doctest::Approx(oracle).epsilon(1e-12).scale(std::max(1.0, std::abs(oracle))));
        }
    }
}

TEST_CASE("single-pass moment vector matches the one-shot routine") {
    RngStream rng(18);
    const auto J = random_matrix(rng, 7);
    const MomentVector m = matrix_moments(J, 13);
    for (int n = 0; n < 13; ++n)
        CHECK(m[static_cast<std::size_t>(n)] == matrix_moment(J, n));
}

TEST_CASE("spectral measure of tiny matrices") {
    const auto single = spectral_measure(TridiagonalMatrix({1.5}, {}));
    REQUIRE(single.size() == 1);
    CHECK(single.locations()[0] == 1.5);
    CHECK(single.weights()[0] == 1.0);

    const auto pm = spectral_measure(TridiagonalMatrix({0.0, 0.0}, {1.0}));
    REQUIRE(pm.size() == 2);
    CHECK(pm.locations()[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(pm.locations()[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(pm.weights()[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(pm.weights()[1] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("spectral measure reproduces every moment") {
    RngStream rng(19);
    for (int size : {2, 5, 17, 50}) {
        const auto J = random_matrix(rng, size);
        const auto sp = spectral_measure(J);

        double wsum = 0.0;
        for (double w : sp.weights()) {
            CHECK(w >= 0.0);
            wsum += w;
        }
        CHECK(std::abs(wsum - 1.0) < 1e-12);

        for (int n = 0; n <= 12; ++n) {
            const double via_walks = matrix_moment(J, n);
            const double via_spectrum = sp.moment(n);
            CHECK(std::abs(via_walks - via_spectrum) <=
                  1e-9 * std::max(1.0, std::abs(via_walks)));
        }
    }
}

TEST_CASE("orthogonal polynomial recurrence") {
    const auto H = associated_hermite_matrix(2.5, 6);
    CHECK(eval_orthopoly(H, 0, 3.7) == 1.0);
    // First-degree polynomial is x for the zero-diagonal recurrence.
    CHECK(eval_orthopoly(H, 1, 0.8) == doctest::Approx(0.8));
    // One step further at c = 1: x^2 - (c+1).
    const auto H1 = associated_hermite_matrix(1.0, 6);
    for (double x : {-2.0, 0.0, 0.5, 3.0})
        CHECK(eval_orthopoly(H1, 2, x) == doctest::Approx(x * x - 2.0).epsilon(1e-14));
    CHECK_THROWS_AS(eval_orthopoly(H, 7, 0.0), std::invalid_argument);
}

TEST_CASE("the degree-n polynomial vanishes on the spectrum") {
    RngStream rng(20);
    const auto J = random_matrix(rng, 12);
    const auto sp = spectral_measure(J);
    const double lam_max = std::max(std::abs(sp.locations().front()),
                                    std::abs(sp.locations().back()));
    const double scale = std::pow(std::max(1.0, lam_max), static_cast<double>(J.size()));
    for (double lam : sp.locations())
        CHECK(std::abs(eval_orthopoly(J, static_cast<int>(J.size()), lam)) <= 1e-6 * scale);
}

TEST_CASE("continued fraction against the closed-form transform") {
    // Semicircle transform at z = 3: (3 - sqrt(5)) / 2.
    const auto J = free_matrix(200);
    const Complex m = stieltjes_cf(J, Complex(3.0, 1e-9));
    CHECK(m.real() == doctest::Approx((3.0 - std::sqrt(5.0)) / 2.0).epsilon(1e-6));

    const Complex one = stieltjes_cf(TridiagonalMatrix({0.0}, {}), Complex(0.0, 1.0));
    CHECK(one.real() == doctest::Approx(0.0));
    CHECK(one.imag() == doctest::Approx(-1.0));

    CHECK_THROWS_AS(stieltjes_cf(J, Complex(3.0, 0.0)), std::invalid_argument);
}

TEST_CASE("transform is conjugate symmetric") {
    RngStream rng(21);
    const auto J = random_matrix(rng, 10);
    for (const Complex z : {Complex(0.3, 0.7), Complex(-2.0, 1.5), Complex(1.0, 3.0)}) {
        const Complex up = stieltjes_cf(J, z);
        const Complex down = stieltjes_cf(J, std::conj(z));
        CHECK(down.real() == doctest::Approx(up.real()).epsilon(1e-14));
        CHECK(down.imag() == doctest::Approx(-up.imag()).epsilon(1e-14));
    }
}

TEST_CASE("self-consistent tail solves its fixed point") {
    for (const Complex z : {Complex(3.0, 1e-3), Complex(0.4, 1e-3), Complex(-1.7, 0.01)}) {
        const Complex t = self_consistent_tail(0.0, 1.0, z);
        const Complex residual = t - 1.0 / (z - t);
        CHECK(std::abs(residual) < 1e-10);
        // With the matching tail the free-matrix fraction is exact at any depth.
        const Complex m = stieltjes_cf(free_matrix(5), z, t);
        const Complex m_exact = 1.0 / (z - t);
        CHECK(std::abs(m - m_exact) < 1e-12);
    }
}

TEST_CASE("density readout of the free matrix") {
    const auto J = free_matrix(400);
    const DensityGrid g =
        density_from_cf(J, GridSpec{-2.5, 2.5, 501}, 1e-3, CfTail::self_consistent, 1.0, 5e-3);
    // Semicircle at 0: sqrt(4)/(2 pi).
    const double at0 = g.values()[250];
    CHECK(std::abs(at0 - 0.31830988618379069) < 2e-3);

    // Outside the support the boundary values die off.
    const DensityGrid outside =
        density_from_cf(J, GridSpec{2.1, 4.0, 96}, 1e-3, CfTail::self_consistent, 0.0, 5e-3);
    for (double v : outside.values()) CHECK(v < 5e-3);
}

TEST_CASE("recurrence-matrix density carries unit mass") {
    const auto H = associated_hermite_matrix(1.0, 400);
    const DensityGrid g =
        density_from_cf(H, GridSpec{-8.0, 8.0, 801}, 1e-3, CfTail::self_consistent, 1.0, 1e-3);
    CHECK(g.mass() == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("density readout refines monotonically for the free matrix") {
    const double exact0 = 2.0 / (2.0 * 3.14159265358979323846) * std::sqrt(4.0 - 0.0);
    const double exact1 = std::sqrt(4.0 - 1.0) / (2.0 * 3.14159265358979323846);
    const double exact19 = std::sqrt(4.0 - 1.9 * 1.9) / (2.0 * 3.14159265358979323846);
    double prev_err = 1e9;
    for (int k = 0; k < 3; ++k) {
        const int depth = 100 << k;
        const double eps = 1e-2 / (1 << k);
        const auto J = free_matrix(depth);
        const auto at = [&](double x) {
            const Complex t = self_consistent_tail(0.0, 1.0, Complex(x, eps));
            return -stieltjes_cf(J, Complex(x, eps), t).imag() / 3.14159265358979323846;
        };
        const double err = std::max({std::abs(at(0.0) - exact0), std::abs(at(1.0) - exact1),
                                     std::abs(at(1.9) - exact19)});
        CHECK(err <= prev_err + 1e-12);
        prev_err = err;
    }
}

TEST_CASE("moment recovery") {
    SUBCASE("point mass") {
        const MomentRecovery r = moments_to_jacobi(MomentVector({1.0, 0.0}));
        CHECK(r.complete());
        REQUIRE(r.coefficients.size() == 1);
        CHECK(r.coefficients.diag()[0] == 0.0);
    }

    SUBCASE("Catalan moments give the free matrix") {
        const MomentVector m({1.0, 0.0, 1.0, 0.0, 2.0, 0.0, 5.0, 0.0, 14.0, 0.0, 42.0, 0.0,
                              132.0, 0.0, 429.0, 0.0});
        const MomentRecovery r = moments_to_jacobi(m);
        CHECK(r.complete());
        REQUIRE(r.coefficients.size() == 8);
        for (double a : r.coefficients.diag()) CHECK(std::abs(a) < 1e-8);
        for (double b : r.coefficients.offdiag()) CHECK(std::abs(b - 1.0) < 1e-8);
    }

    SUBCASE("round-trip through the moment map") {
        RngStream rng(22);
        for (int trial = 0; trial < 5; ++trial) {
            const auto J = random_matrix(rng, 6);
            const MomentVector m = matrix_moments(J, 12);
            const MomentRecovery r = moments_to_jacobi(m);
            REQUIRE(r.complete());
            REQUIRE(r.coefficients.size() == 6);
            for (std::size_t i = 0; i < 6; ++i)
                CHECK(std::abs(r.coefficients.diag()[i] - J.diag()[i]) < 1e-8);
            for (std::size_t i = 0; i < 5; ++i)
                CHECK(std::abs(r.coefficients.offdiag()[i] - J.offdiag()[i]) < 1e-8);
        }
    }

    SUBCASE("support deficiency is signaled through the achieved depth") {
        // Two-point measure cannot fill depth 4.
        const auto two = DiscreteMeasure::from_atoms({{0.0, 0.5}, {1.0, 0.5}});
        std::vector<double> m(8);
        for (int k = 0; k < 8; ++k) m[static_cast<std::size_t>(k)] = two.moment(k);
        const MomentRecovery r = moments_to_jacobi(MomentVector(std::move(m)));
        CHECK_FALSE(r.complete());
        CHECK(r.achieved_depth == 2);
        CHECK(r.requested_depth == 4);
        CHECK(r.coefficients.diag()[0] == doctest::Approx(0.5));
    }
}

TEST_CASE("determinacy diagnostic grows with depth for the model matrices") {
    // sum 1/b_j ~ 2 sqrt(depth) for offdiagonals growing like sqrt(j).
    const double s200 = carleman_sum(associated_hermite_matrix(1.0, 200));
    const double s800 = carleman_sum(associated_hermite_matrix(1.0, 800));
    CHECK(s800 > 1.9 * s200);
    CHECK(carleman_sum(TridiagonalMatrix({0.0, 0.0}, {0.5})) == doctest::Approx(2.0));
}

TEST_CASE("matrix CSV round-trips bit-exactly") {
    RngStream rng(23);
    const auto J = random_matrix(rng, 5);
    std::ostringstream os;
    write_matrix_csv(os, J, {"config: demo"});
    std::istringstream is(os.str());
    const auto back = read_matrix_csv(is);
    REQUIRE(back.size() == J.size());
    for (std::size_t i = 0; i < J.size(); ++i) CHECK(back.diag()[i] == J.diag()[i]);
    for (std::size_t i = 0; i + 1 < J.size(); ++i) CHECK(back.offdiag()[i] == J.offdiag()[i]);
}
