#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "impulsive/resonance.hpp"
#include "impulsive/shooting.hpp"
#include "oracles.hpp"

using namespace impulsive;

namespace {
const double pi2 = std::numbers::pi * std::numbers::pi;
}

TEST_CASE("resonance determinant hand values") {
    const auto mesh = build_mesh({0.5});

    const auto at_zero = resonance_det(mesh, std::vector<double>{0.0});
    CHECK(at_zero.det == doctest::Approx(-1.0)); // det(-I) = (-1)^m
    CHECK_FALSE(at_zero.in_B);

    const auto at_four = resonance_det(mesh, std::vector<double>{4.0});
    CHECK(at_four.det == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(at_four.in_B);

    const auto thirds = build_mesh({1.0 / 3.0, 2.0 / 3.0});
    const auto at_three = resonance_det(thirds, std::vector<double>{3.0, 3.0});
    CHECK(at_three.det == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(at_three.in_B);
    const auto at_zero2 = resonance_det(thirds, std::vector<double>{0.0, 0.0});
    CHECK(at_zero2.det == doctest::Approx(1.0)); // (-1)^2

    CHECK_THROWS_AS(resonance_det(mesh, std::vector<double>{1.0, 2.0}),
                    std::invalid_argument);
}

TEST_CASE("determinant at b = 0 is (-1)^m exactly") {
    std::mt19937_64 rng(71);
    for (int rep = 0; rep < 40; ++rep) {
        const auto mesh = build_mesh(oracle::random_mesh_points(rng, 6));
        const std::size_t m = mesh.interior_count();
        const std::vector<double> zero(m, 0.0);
        CHECK(resonance_det(mesh, zero).det == (m % 2 == 0 ? 1.0 : -1.0));
    }
}

TEST_CASE("morse report hand values") {
    const auto mesh = build_mesh({0.5});

    const auto free = morse_report(mesh, std::vector<double>{0.0});
    CHECK(free.matrix(0, 0) == doctest::Approx(0.25));
    CHECK(free.m0 == 0);
    CHECK(free.nondegenerate);
    CHECK(free.critical_groups.defined);
    CHECK(free.critical_groups.nonzero_q == 0);

    const auto five = morse_report(mesh, std::vector<double>{5.0});
    CHECK(five.matrix(0, 0) == doctest::Approx(-1.0 / 16.0));
    CHECK(five.m0 == 1);

    const auto thirds = build_mesh({1.0 / 3.0, 2.0 / 3.0});
    const auto six = morse_report(thirds, std::vector<double>{6.0, 6.0});
    // Eigenvalues of A are lambda - 6 lambda^2 over the Gram spectrum {1/3, 1/9}.
    CHECK(six.eigenvalues[0] == doctest::Approx(-1.0 / 3.0).epsilon(1e-13));
    CHECK(six.eigenvalues[1] == doctest::Approx(1.0 / 27.0).epsilon(1e-13));
    CHECK(six.m0 == 1);

    // Degenerate case: critical groups are undefined.
    const auto degenerate = morse_report(mesh, std::vector<double>{4.0});
    CHECK_FALSE(degenerate.nondegenerate);
    CHECK_FALSE(degenerate.critical_groups.defined);
}

TEST_CASE("determinant identity det A = det(G) (-1)^m det(diag(b) G - I)") {
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 500; ++rep) {
        const auto mesh = build_mesh(oracle::random_mesh_points(rng, 5));
        const std::size_t m = mesh.interior_count();
        const auto b = oracle::random_vector(rng, m, -12.0, 12.0);

        const auto morse = morse_report(mesh, b);
        const double lhs = linalg::det(morse.matrix);
        const double sign = m % 2 == 0 ? 1.0 : -1.0;
        const double rhs = linalg::det(mesh.gram()) * sign * resonance_det(mesh, b).det;
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("morse parity: sign det A = (-1)^m0 when nondegenerate") {
    std::mt19937_64 rng(37);
    for (int rep = 0; rep < 200; ++rep) {
        const auto mesh = build_mesh(oracle::random_mesh_points(rng, 5));
        const auto b = oracle::random_vector(rng, mesh.interior_count(), -15.0, 15.0);
        const auto morse = morse_report(mesh, b);
        if (!morse.nondegenerate) continue;
        const double det_a = linalg::det(morse.matrix);
        const double expected_sign = morse.m0 % 2 == 0 ? 1.0 : -1.0;
        CHECK(det_a * expected_sign > 0.0);
    }
}

TEST_CASE("path scan on the half mesh finds the crossing at 4") {
    const auto mesh = build_mesh({0.5});
    const auto scan = resonance_path_scan(mesh, std::vector<double>{0.0},
                                          std::vector<double>{8.0}, 100);
    REQUIRE(scan.crossings.size() == 1);
    CHECK(scan.crossings[0].b[0] == doctest::Approx(4.0).epsilon(1e-8));
    CHECK(scan.crossings[0].m0_before == 0);
    CHECK(scan.crossings[0].m0_after == 1);
    CHECK(scan.crossings[0].multiplicity == 1);
    CHECK(scan.m0_constant_between_crossings);
}

TEST_CASE("diagonal path on the thirds mesh crosses at 3 and 9") {
    const auto mesh = build_mesh({1.0 / 3.0, 2.0 / 3.0});
    const auto scan = resonance_path_scan(mesh, std::vector<double>{0.1, 0.1},
                                          std::vector<double>{10.0, 10.0}, 200);
    REQUIRE(scan.crossings.size() == 2);
    CHECK(scan.crossings[0].b[0] == doctest::Approx(3.0).epsilon(1e-8));
    CHECK(scan.crossings[1].b[0] == doctest::Approx(9.0).epsilon(1e-8));
    CHECK(scan.crossings[0].m0_before == 0);
    CHECK(scan.crossings[0].m0_after == 1);
    CHECK(scan.crossings[1].m0_after == 2);
    CHECK(scan.m0_constant_between_crossings);
}

TEST_CASE("constant path has no crossings") {
    const auto mesh = build_mesh({0.5});
    const auto scan = resonance_path_scan(mesh, std::vector<double>{1.0},
                                          std::vector<double>{1.0}, 10);
    CHECK(scan.crossings.empty());
    CHECK(scan.m0_constant_between_crossings);
}

TEST_CASE("path scan rejects endpoints inside the resonance set") {
    const auto mesh = build_mesh({0.5});
    CHECK_THROWS_WITH_AS(resonance_path_scan(mesh, std::vector<double>{4.0},
                                             std::vector<double>{8.0}, 10),
                         doctest::Contains("resonance set"), std::invalid_argument);
}

TEST_CASE("morse index is constant on paths avoiding the resonance set") {
    std::mt19937_64 rng(41);
    int tested_paths = 0;
    while (tested_paths < 20) {
        const auto mesh = build_mesh(oracle::random_mesh_points(rng, 4));
        const std::size_t m = mesh.interior_count();
        const auto b0 = oracle::random_vector(rng, m, -10.0, 10.0);
        const auto b1 = oracle::random_vector(rng, m, -10.0, 10.0);
        if (resonance_det(mesh, b0).in_B || resonance_det(mesh, b1).in_B) continue;
        ++tested_paths;

        const auto scan = resonance_path_scan(mesh, b0, b1, 160);
        CHECK(scan.m0_constant_between_crossings);
        for (const auto& crossing : scan.crossings)
            CHECK(std::abs(crossing.m0_after - crossing.m0_before) ==
                  crossing.multiplicity);
    }
}

TEST_CASE("det roots coincide with transfer-map roots along 1-d paths") {
    // The two root-finders share no code; their zero sets must agree.
    std::mt19937_64 rng(43);
    int tested = 0;
    int attempts = 0;
    while (tested < 50) {
        REQUIRE(++attempts < 500);
        const auto mesh = build_mesh(oracle::random_mesh_points(rng, 4));
        const std::size_t m = mesh.interior_count();
        const auto b0 = oracle::random_vector(rng, m, -8.0, 2.0);
        const auto b1 = oracle::random_vector(rng, m, 6.0, 30.0);
        if (resonance_det(mesh, b0).in_B || resonance_det(mesh, b1).in_B) continue;

        auto at = [&](double t) {
            std::vector<double> b(m);
            for (std::size_t i = 0; i < m; ++i) b[i] = b0[i] + t * (b1[i] - b0[i]);
            return b;
        };
        auto bisect_roots = [&](auto&& fn) {
            std::vector<double> roots;
            const int grid = 400;
            double prev = fn(0.0);
            for (int i = 1; i <= grid; ++i) {
                const double t = static_cast<double>(i) / grid;
                const double cur = fn(t);
                if (prev * cur < 0.0) {
                    double lo = static_cast<double>(i - 1) / grid, hi = t, flo = prev;
                    while (hi - lo > 1e-13) {
                        const double mid = 0.5 * (lo + hi);
                        const double fm = fn(mid);
                        if (flo * fm <= 0.0)
                            hi = mid;
                        else {
                            lo = mid;
                            flo = fm;
                        }
                    }
                    roots.push_back(0.5 * (lo + hi));
                }
                prev = cur;
            }
            return roots;
        };

        const auto det_roots =
            bisect_roots([&](double t) { return resonance_det(mesh, at(t)).det; });
        const auto transfer_roots =
            bisect_roots([&](double t) { return linear_transfer(mesh, at(t)); });

        if (det_roots.size() != transfer_roots.size()) {
            // Tangential or near-degenerate path; skip rather than compare sets.
            continue;
        }
        ++tested;
        for (std::size_t i = 0; i < det_roots.size(); ++i)
            CHECK(std::abs(det_roots[i] - transfer_roots[i]) <= 1e-8);
    }
}

TEST_CASE("certificate on the guaranteed example") {
    const auto p = linear_problem(build_mesh({0.5}), {50.0 * pi2, 50.0 * pi2}, {3.0});
    const auto cert = nontriviality_certificate(p);

    CHECK(cert.hypotheses_pass);
    CHECK(cert.slope_above_first_eigenvalue);
    CHECK(cert.slope_witness == 1);
    CHECK(cert.k_saddle == 7);
    CHECK(cert.m0 == 0);
    CHECK(cert.guaranteed);
    CHECK(cert.conclusion == "nontrivial solution guaranteed");

    // Hat threshold on the half mesh is 4; b = 3 sits below it, and the
    // hat condition implies the quadratic-form condition.
    CHECK(cert.hat_thresholds[0] == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(cert.impulse_below_hat_threshold);
    CHECK(cert.quadratic_form_nonnegative);

    // Equal spacing specialization for m = 1.
    CHECK(cert.equally_spaced);
    CHECK(cert.equal_spacing_lambda1 == doctest::Approx(4.0 * pi2).epsilon(1e-12));
    CHECK(cert.equal_spacing_b_threshold == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(cert.equal_spacing_a_exceeds);
    CHECK(cert.equal_spacing_b_below);
}

TEST_CASE("certificate on the not-guaranteed example") {
    const auto p = linear_problem(build_mesh({0.5}), {pi2, pi2}, {5.0});
    const auto cert = nontriviality_certificate(p);

    CHECK_FALSE(cert.slope_above_first_eigenvalue); // pi^2 < 4 pi^2
    CHECK_FALSE(cert.quadratic_form_nonnegative);   // A = [-1/16]
    CHECK(cert.m0 == 1);
    CHECK_FALSE(cert.guaranteed);
    CHECK(cert.conclusion == "not guaranteed");
}

TEST_CASE("certificate refuses resonant and in-B inputs") {
    SUBCASE("resonant slope") {
        const auto p = linear_problem(build_mesh({0.5}), {4.0 * pi2, pi2}, {3.0});
        const auto cert = nontriviality_certificate(p);
        CHECK_FALSE(cert.hypotheses_pass);
        CHECK_FALSE(cert.guaranteed);
    }
    SUBCASE("impulse slopes inside B") {
        const auto p = linear_problem(build_mesh({0.5}), {50.0 * pi2, 50.0 * pi2}, {4.0});
        const auto cert = nontriviality_certificate(p);
        CHECK_FALSE(cert.hypotheses_pass);
        CHECK_FALSE(cert.guaranteed);
    }
    SUBCASE("misdeclared growth removes the guarantee") {
        GTerm g;
        g.entry = catalog_entry("rational_cubic");
        g.entry.growth_r = 0.5; // invalid declaration
        auto p = make_problem(build_mesh({0.5}), {50.0 * pi2, 50.0 * pi2}, {3.0}, g, {});
        const auto cert = nontriviality_certificate(p);
        CHECK_FALSE(cert.hypotheses_pass);
        CHECK_FALSE(cert.guaranteed);
    }
    SUBCASE("misdeclared impulse growth removes the guarantee") {
        NonlinearityEntry h = catalog_entry("bounded_atan"); // not superlinear
        h.kind = GrowthKind::Superlinear;
        h.growth_mu = 2.5;
        h.growth_c = 1.0;
        h.growth_C = 0.0;
        auto p = make_problem(build_mesh({0.5}), {50.0 * pi2, 50.0 * pi2}, {3.0}, GTerm{},
                              {h});
        const auto cert = nontriviality_certificate(p);
        CHECK_FALSE(cert.hypotheses_pass);
        CHECK_FALSE(cert.guaranteed);
    }
}

TEST_CASE("hat-threshold condition implies the quadratic-form condition") {
    std::mt19937_64 rng(47);
    int tested = 0;
    while (tested < 100) {
        const auto mesh = build_mesh(oracle::random_mesh_points(rng, 4));
        const std::size_t m = mesh.interior_count();
        auto b = oracle::random_vector(rng, m, -5.0, 25.0);
        std::vector<double> a(m + 1, 0.0);
        const auto cert = nontriviality_certificate(linear_problem(mesh, a, b));
        if (!cert.impulse_below_hat_threshold) continue;
        ++tested;
        CHECK(cert.quadratic_form_nonnegative);
    }
}
