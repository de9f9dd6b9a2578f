#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "impulsive/problem.hpp"

using namespace impulsive;

TEST_CASE("catalog entries evaluate and carry sane metadata") {
    const auto& rc = catalog_entry("rational_cubic");
    // (t^3 + t^2)/(t^2 + 1) - t at t = 1: 2/2 - 1 = 0.
    CHECK(rc.fn.value(1.0) == doctest::Approx(0.0));
    CHECK(rc.fn.value(0.0) == 0.0);
    CHECK(rc.slope_at_zero == doctest::Approx(-1.0));
    CHECK(rc.fn.derivative(0.0) == doctest::Approx(-1.0));

    const auto& cubic = catalog_entry("cubic");
    CHECK(cubic.fn.value(2.0) == 8.0);
    CHECK(cubic.fn.primitive(2.0) == doctest::Approx(4.0));

    const auto& cps = catalog_entry("cubic_plus_square");
    CHECK(cps.fn.value(-1.0) == doctest::Approx(0.0));

    CHECK_THROWS_WITH_AS(catalog_entry("nope"), doctest::Contains("unknown nonlinearity"),
                         std::invalid_argument);
}

TEST_CASE("derivatives are consistent with values by finite differences") {
    for (const auto& name : catalog_names()) {
        const auto& e = catalog_entry(name);
        CHECK(max_derivative_mismatch(e) <= 1e-6);
    }
}

TEST_CASE("primitives differentiate back to values") {
    for (const auto& name : catalog_names()) {
        const auto& e = catalog_entry(name);
        if (e.is_none()) continue;
        for (double t : {-3.0, -0.7, 0.4, 2.5}) {
            const double eps = 1e-6;
            const double fd = (e.fn.primitive(t + eps) - e.fn.primitive(t - eps)) / (2 * eps);
            CHECK(fd == doctest::Approx(e.fn.value(t)).epsilon(1e-7));
        }
        CHECK(e.fn.primitive(0.0) == doctest::Approx(0.0));
    }
}

TEST_CASE("declared growth bounds hold on the sample grid") {
    CHECK(sample_sublinear_bound(catalog_entry("rational_cubic")));
    CHECK(sample_sublinear_bound(catalog_entry("bounded_atan")));
    CHECK(sample_superlinear_bound(catalog_entry("cubic")));
    CHECK(sample_superlinear_bound(catalog_entry("cubic_plus_square")));
    CHECK(sample_sublinear_bound(catalog_entry("none")));
    CHECK(sample_superlinear_bound(catalog_entry("none")));

    // A misdeclared entry must fail the sample check.
    NonlinearityEntry bogus = catalog_entry("bounded_atan");
    bogus.kind = GrowthKind::Superlinear;
    bogus.growth_mu = 3.0;
    bogus.growth_c = 1.0;
    bogus.growth_C = 0.0;
    CHECK_FALSE(sample_superlinear_bound(bogus));
}

TEST_CASE("problem assembly with per-subinterval g scaling") {
    auto mesh = build_mesh({0.5});
    GTerm g;
    g.entry = catalog_entry("rational_cubic");
    g.scale_by_a = true;
    const double a1 = 10.0, a2 = 20.0;
    const auto p = make_problem(std::move(mesh), {a1, a2}, {3.0}, g,
                                {catalog_entry("cubic_plus_square")});

    // f(x, t) = a_j (t^3 + t^2)/(t^2 + 1) when g = rational_cubic scaled by a.
    for (double t : {-2.0, -0.5, 0.0, 1.0, 3.0}) {
        const double expected1 = a1 * (t * t * t + t * t) / (t * t + 1.0);
        const double expected2 = a2 * (t * t * t + t * t) / (t * t + 1.0);
        CHECK(p.f(1, t) == doctest::Approx(expected1).epsilon(1e-14));
        CHECK(p.f(2, t) == doctest::Approx(expected2).epsilon(1e-14));
    }
    // The assembled slope at zero vanishes: a_j + a_j * (-1) = 0.
    CHECK(p.f_t(1, 0.0) == doctest::Approx(0.0));
    CHECK(p.zero_is_critical());

    // iota(t) = 3 t + t^3 + t^2.
    CHECK(p.impulse(1, 2.0) == doctest::Approx(6.0 + 8.0 + 4.0));
    CHECK(p.impulse_slope(1, 0.0) == doctest::Approx(3.0));
    CHECK(p.impulse_primitive(1, 2.0) == doctest::Approx(0.5 * 3.0 * 4.0 + 4.0 + 8.0 / 3.0));
}

TEST_CASE("problem validation rejects wrong lengths") {
    CHECK_THROWS_WITH_AS(linear_problem(build_mesh({0.5}), {1.0}, {1.0}),
                         doctest::Contains("a must have length"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(linear_problem(build_mesh({0.5}), {1.0, 2.0}, {1.0, 2.0}),
                         doctest::Contains("b must have length"), std::invalid_argument);
}
