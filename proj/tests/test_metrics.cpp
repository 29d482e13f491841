// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <random>

#include <doctest.h>

#include "hmimos/metrics.hpp"

using namespace hmimos;

namespace {

Eigen::MatrixXcd random_matrix(int rows, int cols, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
    return m;
}

}  // namespace

TEST_CASE("eigen_spectrum") {
    SUBCASE("zero matrix") {
        const auto rep = eigen_spectrum(Eigen::MatrixXcd::Zero(4, 3));
        REQUIRE(rep.eigenvalues.size() == 3);
        CHECK(rep.eigenvalues.isZero());
        CHECK(rep.significant == 0);
    }

    SUBCASE("empty matrix") {
        const auto rep = eigen_spectrum(Eigen::MatrixXcd(), "empty");
        CHECK(rep.eigenvalues.size() == 0);
        CHECK(rep.label == "empty");
    }

    SUBCASE("gram eigenvalues are nonnegative, sorted, and sum to the squared norm") {
        for (uint64_t seed = 1; seed <= 5; ++seed) {
            const auto m = random_matrix(8, 6, seed);
            const auto rep = eigen_spectrum(m);
            REQUIRE(rep.eigenvalues.size() == 6);
            for (int i = 0; i < 6; ++i) {
                CHECK(rep.eigenvalues(i) >= 0.0);
                if (i > 0) CHECK(rep.eigenvalues(i) <= rep.eigenvalues(i - 1));
            }
            const double frob2 = m.squaredNorm();
            CHECK(rep.eigenvalues.sum() == doctest::Approx(frob2).epsilon(1e-9));
        }
    }

    SUBCASE("significant count uses the relative threshold") {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
        m(0, 0) = 1.0;
        m(1, 1) = 1e-2;
        m(2, 2) = 1e-9;  // squared eigenvalue 1e-18, below 1e-6 of max
        const auto rep = eigen_spectrum(m);
        CHECK(rep.significant == 2);
    }

    SUBCASE("non-finite entries rejected") {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
        m(0, 0) = std::numeric_limits<double>::quiet_NaN();
        CHECK_THROWS_AS(eigen_spectrum(m), std::invalid_argument);
    }
}

TEST_CASE("capacity") {
    SUBCASE("zero channel has zero capacity") {
        CHECK(capacity(Eigen::MatrixXcd::Zero(4, 4), 100.0) == 0.0);
    }

    SUBCASE("identity channel analytic value") {
        const int n = 5;
        const double rho = 7.3;
        CHECK(capacity(Eigen::MatrixXcd::Identity(n, n), rho) ==
              doctest::Approx(n * std::log2(1.0 + rho / n)).epsilon(1e-13));
    }

    SUBCASE("diag(2, 1) at snr 3") {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
        m(0, 0) = 2.0;
        m(1, 1) = 1.0;
        const double expected = std::log2(7.0) + std::log2(2.5);
        CHECK(capacity(m, 3.0) == doctest::Approx(expected).epsilon(1e-12));
    }

    SUBCASE("zero snr gives zero capacity") {
        CHECK(capacity(random_matrix(4, 6, 9), 0.0) == 0.0);
    }

    SUBCASE("monotone nondecreasing in snr") {
        const auto m = random_matrix(5, 7, 21);
        double prev = 0.0;
        for (double snr = 0.0; snr <= 100.0; snr += 2.5) {
            const double c = capacity(m, snr);
            CHECK(c >= prev);
            prev = c;
        }
    }

    SUBCASE("wide and tall orientations agree") {
        const auto m = random_matrix(3, 9, 33);
        const Eigen::MatrixXcd t = m.transpose();
        // Same nonzero singular values; different N_t normalization.
        const double c_wide = capacity(m, 9.0);
        const double c_tall = capacity(t, 3.0);
        CHECK(c_wide == doctest::Approx(c_tall).epsilon(1e-12));
    }

    SUBCASE("invalid inputs rejected") {
        CHECK_THROWS_AS(capacity(random_matrix(2, 2, 3), -1.0), std::invalid_argument);
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
        m(1, 1) = std::numeric_limits<double>::infinity();
        CHECK_THROWS_AS(capacity(m, 1.0), std::invalid_argument);
        CHECK(capacity(Eigen::MatrixXcd(), 1.0) == 0.0);
    }
}
