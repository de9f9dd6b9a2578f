#include <doctest.h>

#include <cmath>
#include <random>

#include "impulsive/linalg.hpp"

using namespace impulsive;

TEST_CASE("jacobi eigensolver on a known 2x2") {
    linalg::Matrix a(2, 2);
    a(0, 0) = 2.0 / 9.0;
    a(0, 1) = a(1, 0) = 1.0 / 9.0;
    a(1, 1) = 2.0 / 9.0;
    const auto eig = linalg::sym_eigen(a);
    CHECK(eig.values[0] == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
    CHECK(eig.values[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    // Residual |A v - lambda v| for each pair.
    for (std::size_t k = 0; k < 2; ++k) {
        for (std::size_t i = 0; i < 2; ++i) {
            double av = 0.0;
            for (std::size_t j = 0; j < 2; ++j) av += a(i, j) * eig.vectors(j, k);
            CHECK(av == doctest::Approx(eig.values[k] * eig.vectors(i, k)).epsilon(1e-12));
        }
    }
}

TEST_CASE("jacobi eigensolver reproduces random spectra") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 1 + rep % 6;
        // Build A = Q D Q^T from a random orthogonal Q (via Gram-Schmidt).
        linalg::Matrix q(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) q(i, j) = dist(rng);
        for (std::size_t c = 0; c < n; ++c) {
            for (std::size_t prev = 0; prev < c; ++prev) {
                double ip = 0.0;
                for (std::size_t i = 0; i < n; ++i) ip += q(i, c) * q(i, prev);
                for (std::size_t i = 0; i < n; ++i) q(i, c) -= ip * q(i, prev);
            }
            double norm = 0.0;
            for (std::size_t i = 0; i < n; ++i) norm += q(i, c) * q(i, c);
            norm = std::sqrt(norm);
            REQUIRE(norm > 1e-8);
            for (std::size_t i = 0; i < n; ++i) q(i, c) /= norm;
        }
        std::vector<double> d(n);
        for (double& v : d) v = dist(rng);
        std::sort(d.begin(), d.end());

        linalg::Matrix a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double s = 0.0;
                for (std::size_t k = 0; k < n; ++k) s += q(i, k) * d[k] * q(j, k);
                a(i, j) = s;
            }

        const auto eig = linalg::sym_eigen(a);
        for (std::size_t k = 0; k < n; ++k)
            CHECK(eig.values[k] == doctest::Approx(d[k]).epsilon(1e-11));

        // det via LU must equal the eigenvalue product.
        double prod = 1.0;
        for (double v : d) prod *= v;
        CHECK(linalg::det(a) == doctest::Approx(prod).epsilon(1e-10));
    }
}

TEST_CASE("determinant hand cases") {
    linalg::Matrix a(1, 1);
    a(0, 0) = -1.0;
    CHECK(linalg::det(a) == -1.0);

    linalg::Matrix b(2, 2);
    b(0, 0) = 1.0;
    b(0, 1) = 2.0;
    b(1, 0) = 3.0;
    b(1, 1) = 4.0;
    CHECK(linalg::det(b) == doctest::Approx(-2.0));

    linalg::Matrix singular(2, 2);
    singular(0, 0) = 1.0;
    singular(0, 1) = 2.0;
    singular(1, 0) = 2.0;
    singular(1, 1) = 4.0;
    CHECK(linalg::det(singular) == doctest::Approx(0.0));
}

TEST_CASE("lu_solve round trip and singular detection") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t n = 2 + rep % 5;
        linalg::Matrix a(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) a(i, j) = dist(rng);
            a(i, i) += 3.0; // comfortably nonsingular
        }
        std::vector<double> x_true(n);
        for (double& v : x_true) v = dist(rng);
        auto rhs = linalg::matvec(a, x_true);
        REQUIRE(linalg::lu_solve(a, rhs));
        for (std::size_t i = 0; i < n; ++i)
            CHECK(rhs[i] == doctest::Approx(x_true[i]).epsilon(1e-11));
    }

    linalg::Matrix s(2, 2);
    s(0, 0) = 1.0;
    s(0, 1) = 1.0;
    s(1, 0) = 1.0;
    s(1, 1) = 1.0;
    std::vector<double> rhs{1.0, 2.0};
    CHECK_FALSE(linalg::lu_solve(s, rhs));
}

TEST_CASE("inertia counts signs") {
    linalg::Matrix a(3, 3);
    a(0, 0) = -2.0;
    a(1, 1) = 0.0;
    a(2, 2) = 5.0;
    const auto in = linalg::sym_inertia(a, 1e-12);
    CHECK(in.negative == 1);
    CHECK(in.zero == 1);
    CHECK(in.positive == 1);
}
