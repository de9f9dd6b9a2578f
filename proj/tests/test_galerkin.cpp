#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "impulsive/galerkin.hpp"
#include "impulsive/resonance.hpp"
#include "oracles.hpp"

using namespace impulsive;

namespace {

const double pi = std::numbers::pi;

CoefficientVector random_coeffs(std::mt19937_64& rng, const GalerkinBasis& basis,
                                double scale) {
    std::uniform_real_distribution<double> dist(-scale, scale);
    CoefficientVector c(basis.dimension());
    for (double& v : c) v = dist(rng);
    return c;
}

// The paper-example-style problem used for derivative checks.
ProblemSpec example_problem() {
    GTerm g;
    g.entry = catalog_entry("rational_cubic");
    g.scale_by_a = true;
    return make_problem(build_mesh({0.5}), {50.0 * pi * pi, 50.0 * pi * pi}, {3.0}, g,
                        {catalog_entry("cubic_plus_square")});
}

} // namespace

TEST_CASE("basis dimensions and orthonormality validation") {
    const auto mesh = build_mesh({0.5});
    const GalerkinBasis basis(mesh, 3, 16);
    CHECK(basis.dimension() == 7);
    CHECK(basis.orthonormality_defect() <= 1e-10);

    const auto thirds = build_mesh({1.0 / 3.0, 2.0 / 3.0});
    const GalerkinBasis b2(thirds, 4, 18);
    CHECK(b2.dimension() == 14);

    CHECK_THROWS_WITH_AS(GalerkinBasis(mesh, 4, 10), doctest::Contains("too small"),
                         std::invalid_argument);
    // Meets the 2n + 4 floor but fails the 1e-10 orthonormality check.
    CHECK_THROWS_WITH_AS(GalerkinBasis(mesh, 8, 20), doctest::Contains("orthonormality"),
                         std::invalid_argument);

    const GalerkinBasis big(mesh, 32, 74);
    CHECK(big.orthonormality_defect() <= 1e-10);
}

TEST_CASE("sine modes vanish at nodes and evaluate with the right normalization") {
    const auto mesh = build_mesh({0.5});
    const GalerkinBasis basis(mesh, 2, 14);

    CHECK(basis.sine_value(1, 1, 0.5) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(basis.sine_value(1, 1, 0.25) == doctest::Approx(1.0 / pi));

    CoefficientVector c(basis.dimension(), 0.0);
    c[basis.sine_index(1, 1)] = 1.0;
    CHECK(basis.eval(c, 0.25) == doctest::Approx(1.0 / pi));
    CHECK(basis.eval(c, 0.5) == doctest::Approx(0.0).epsilon(1e-15));

    CoefficientVector w(basis.dimension(), 0.0);
    w[basis.m_index(1)] = 1.0;
    CHECK(basis.eval(w, 0.5) == doctest::Approx(0.25));

    const CoefficientVector zero(basis.dimension(), 0.0);
    for (double x : {0.0, 0.3, 0.5, 0.9, 1.0}) CHECK(basis.eval(zero, x) == 0.0);

    CHECK_THROWS_AS(basis.eval(CoefficientVector(3, 0.0), 0.5), std::invalid_argument);
}

TEST_CASE("norm identity for the pure quadratic energy") {
    std::mt19937_64 rng(5);
    const auto mesh = build_mesh({0.3, 0.7});
    const GalerkinBasis basis(mesh, 5, 20);
    const auto p = linear_problem(mesh, {0.0, 0.0, 0.0}, {0.0, 0.0});

    for (int rep = 0; rep < 20; ++rep) {
        const auto c = random_coeffs(rng, basis, 2.0);
        const double direct = 0.5 * basis.h_norm_sq(c);
        CHECK(energy(p, basis, c) == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("energy hand values on the half mesh") {
    const auto mesh = build_mesh({0.5});
    const GalerkinBasis basis(mesh, 2, 14);

    CoefficientVector w1(basis.dimension(), 0.0);
    w1[basis.m_index(1)] = 1.0;

    const auto free = linear_problem(mesh, {0.0, 0.0}, {0.0});
    CHECK(energy(free, basis, w1) == doctest::Approx(0.125).epsilon(1e-13));

    const auto with_impulse = linear_problem(mesh, {0.0, 0.0}, {4.0});
    CHECK(energy(with_impulse, basis, w1) == doctest::Approx(0.0).epsilon(1e-13));

    const CoefficientVector zero(basis.dimension(), 0.0);
    CHECK(energy(with_impulse, basis, zero) == 0.0);
}

TEST_CASE("zero is a critical point when the data vanish at zero") {
    const auto p = example_problem();
    const GalerkinBasis basis(p.mesh, 4, 18);
    const CoefficientVector zero(basis.dimension(), 0.0);
    for (double g : gradient(p, basis, zero)) CHECK(g == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("gradient matches central differences of the energy") {
    const auto p = example_problem();
    const GalerkinBasis basis(p.mesh, 8, 26);
    std::mt19937_64 rng(17);

    for (int rep = 0; rep < 20; ++rep) {
        const auto c = random_coeffs(rng, basis, 1.0);
        const auto g = gradient(p, basis, c);
        const double eps = 1e-6;
        for (std::size_t i = 0; i < basis.dimension(); ++i) {
            auto cp = c, cm = c;
            cp[i] += eps;
            cm[i] -= eps;
            const double fd = (energy(p, basis, cp) - energy(p, basis, cm)) / (2.0 * eps);
            CHECK(std::abs(fd - g[i]) / std::max(1.0, std::abs(g[i])) <= 1e-6);
        }
    }
}

TEST_CASE("gradient-energy directional consistency") {
    const auto p = example_problem();
    const GalerkinBasis basis(p.mesh, 6, 22);
    std::mt19937_64 rng(19);

    for (int rep = 0; rep < 20; ++rep) {
        const auto c = random_coeffs(rng, basis, 1.0);
        const auto d = random_coeffs(rng, basis, 1.0);
        const auto g = gradient(p, basis, c);

        const double eps = 1e-6;
        CoefficientVector cp = c, cm = c;
        for (std::size_t i = 0; i < c.size(); ++i) {
            cp[i] += eps * d[i];
            cm[i] -= eps * d[i];
        }
        const double directional =
            (energy(p, basis, cp) - energy(p, basis, cm)) / (2.0 * eps);
        double gd = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) gd += g[i] * d[i];
        CHECK(std::abs(directional - gd) / std::max(1.0, std::abs(gd)) <= 1e-6);
    }
}

TEST_CASE("hessian matches finite differences of the gradient") {
    const auto p = example_problem();
    const GalerkinBasis basis(p.mesh, 8, 26);
    std::mt19937_64 rng(23);

    for (int rep = 0; rep < 5; ++rep) {
        const auto c = random_coeffs(rng, basis, 1.0);
        const auto hess = hessian(p, basis, c);

        // Exact symmetry by construction.
        for (std::size_t i = 0; i < basis.dimension(); ++i)
            for (std::size_t j = 0; j < basis.dimension(); ++j)
                CHECK(hess(i, j) == hess(j, i));

        const double eps = 1e-6;
        for (std::size_t i = 0; i < basis.dimension(); ++i) {
            auto cp = c, cm = c;
            cp[i] += eps;
            cm[i] -= eps;
            const auto gp = gradient(p, basis, cp);
            const auto gm = gradient(p, basis, cm);
            double row_scale = 1.0;
            for (std::size_t j = 0; j < basis.dimension(); ++j)
                row_scale = std::max(row_scale, std::abs(hess(i, j)));
            for (std::size_t j = 0; j < basis.dimension(); ++j) {
                const double fd = (gp[j] - gm[j]) / (2.0 * eps);
                CHECK(std::abs(fd - hess(i, j)) / row_scale <= 1e-5);
            }
        }
    }
}

TEST_CASE("gradient M-block of the asymptotic problem is A c_M") {
    const auto mesh = build_mesh({1.0 / 3.0, 2.0 / 3.0});
    const GalerkinBasis basis(mesh, 3, 16);
    const auto p = linear_problem(mesh, {0.0, 0.0, 0.0}, {6.0, 6.0});
    const auto morse = morse_report(mesh, p.b);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int rep = 0; rep < 10; ++rep) {
        CoefficientVector c(basis.dimension(), 0.0);
        std::vector<double> cm(2);
        for (std::size_t l = 1; l <= 2; ++l) {
            cm[l - 1] = dist(rng);
            c[basis.m_index(l)] = cm[l - 1];
        }
        const auto g = gradient(p, basis, c);
        const auto expected = linalg::matvec(morse.matrix, cm);
        for (std::size_t l = 1; l <= 2; ++l)
            CHECK(g[basis.m_index(l)] == doctest::Approx(expected[l - 1]).epsilon(1e-12));
        // Sine block untouched by a function supported on M in a linear problem.
        for (std::size_t j = 1; j <= 3; ++j)
            for (std::size_t k = 1; k <= 3; ++k)
                CHECK(g[basis.sine_index(j, k)] == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("hessian structure for linear problems") {
    const auto mesh = build_mesh({0.5});
    const GalerkinBasis basis(mesh, 4, 18);

    SUBCASE("pure quadratic: identity on sines, Gram on M") {
        const auto p = linear_problem(mesh, {0.0, 0.0}, {0.0});
        const auto h = hessian(p, basis, CoefficientVector(basis.dimension(), 0.0));
        for (std::size_t j = 1; j <= 2; ++j)
            for (std::size_t k = 1; k <= 4; ++k)
                CHECK(h(basis.sine_index(j, k), basis.sine_index(j, k)) ==
                      doctest::Approx(1.0).epsilon(1e-12));
        CHECK(h(basis.m_index(1), basis.m_index(1)) == doctest::Approx(0.25).epsilon(1e-12));
    }

    SUBCASE("sine diagonal entries are 1 - a_j / lambda_jk; M block is A at a = 0") {
        const double a2 = 7.0;
        const auto p = linear_problem(mesh, {0.0, a2}, {5.0});
        const auto h = hessian(p, basis, CoefficientVector(basis.dimension(), 0.0));
        for (std::size_t k = 1; k <= 4; ++k) {
            CHECK(h(basis.sine_index(1, k), basis.sine_index(1, k)) ==
                  doctest::Approx(1.0).epsilon(1e-12));
            const double lam = subinterval_eigenvalue(mesh, 2, k);
            CHECK(h(basis.sine_index(2, k), basis.sine_index(2, k)) ==
                  doctest::Approx(1.0 - a2 / lam).epsilon(1e-11));
        }
        // a = 0 on subinterval 1 only; the M block still couples through a2.
        const auto p0 = linear_problem(mesh, {0.0, 0.0}, {5.0});
        const auto h0 = hessian(p0, basis, CoefficientVector(basis.dimension(), 0.0));
        const auto morse = morse_report(mesh, p0.b);
        CHECK(h0(basis.m_index(1), basis.m_index(1)) ==
              doctest::Approx(morse.matrix(0, 0)).epsilon(1e-12));
    }
}

TEST_CASE("assembly matches finite differences across problem variants") {
    std::mt19937_64 rng(83);

    struct Variant {
        ProblemSpec problem;
        const char* label;
    };
    GTerm scaled;
    scaled.entry = catalog_entry("rational_cubic");
    scaled.scale_by_a = true;
    GTerm atan_term;
    atan_term.entry = catalog_entry("bounded_atan");
    atan_term.scale = 2.0;

    std::vector<Variant> variants;
    variants.push_back({make_problem(build_mesh({0.3, 0.7}), {25.0, -4.0, 60.0},
                                     {1.5, -2.0}, scaled,
                                     {catalog_entry("cubic"), catalog_entry("cubic_plus_square")}),
                        "two nodes, scaled g, mixed impulses"});
    variants.push_back({make_problem(build_mesh({0.6}), {-10.0, 12.0}, {4.5}, atan_term,
                                     {catalog_entry("cubic")}),
                        "atan perturbation with fixed scale"});
    variants.push_back({make_problem(build_mesh({0.2, 0.45, 0.8}), {5.0, 5.0, 5.0, 5.0},
                                     {0.5, 1.0, -0.5}, GTerm{}, {}),
                        "linear three-node"});

    for (const auto& [p, label] : variants) {
        INFO(label);
        const GalerkinBasis basis(p.mesh, 5, 20);
        std::uniform_real_distribution<double> dist(-0.8, 0.8);
        for (int rep = 0; rep < 3; ++rep) {
            CoefficientVector c(basis.dimension());
            for (double& v : c) v = dist(rng);

            const auto g = gradient(p, basis, c);
            const auto hess = hessian(p, basis, c);
            const double eps = 1e-6;
            for (std::size_t i = 0; i < basis.dimension(); ++i) {
                auto cp = c, cm = c;
                cp[i] += eps;
                cm[i] -= eps;
                const double fd =
                    (energy(p, basis, cp) - energy(p, basis, cm)) / (2.0 * eps);
                CHECK(std::abs(fd - g[i]) / std::max(1.0, std::abs(g[i])) <= 2e-6);

                const auto gp = gradient(p, basis, cp);
                const auto gm = gradient(p, basis, cm);
                double row_scale = 1.0;
                for (std::size_t j = 0; j < basis.dimension(); ++j)
                    row_scale = std::max(row_scale, std::abs(hess(i, j)));
                for (std::size_t j = 0; j < basis.dimension(); ++j)
                    CHECK(std::abs((gp[j] - gm[j]) / (2.0 * eps) - hess(i, j)) /
                              row_scale <=
                          1e-5);
            }
        }
    }
}

TEST_CASE("sine gradient components never see the impulses") {
    const auto mesh = build_mesh({0.4});
    const GalerkinBasis basis(mesh, 4, 18);
    std::mt19937_64 rng(29);
    const auto c = random_coeffs(rng, basis, 1.5);

    const auto p1 = linear_problem(mesh, {2.0, 3.0}, {1.0});
    const auto p2 = make_problem(build_mesh({0.4}), {2.0, 3.0}, {9.0}, GTerm{},
                                 {catalog_entry("cubic")});

    const auto g1 = gradient(p1, basis, c);
    const auto g2 = gradient(p2, basis, c);
    for (std::size_t j = 1; j <= 2; ++j)
        for (std::size_t k = 1; k <= 4; ++k)
            CHECK(g1[basis.sine_index(j, k)] == g2[basis.sine_index(j, k)]);
}
