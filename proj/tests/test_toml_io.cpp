#include <doctest.h>

#include <cmath>
#include <random>

#include "impulsive/problem_io.hpp"
#include "impulsive/toml.hpp"

using namespace impulsive;

TEST_CASE("toml parses sections, arrays, inline tables, comments") {
    const std::string text = R"(# a problem file
[mesh]
points = [0.25, 0.5, 0.75]   # interior nodes

[coefficients]
a = [1.0, 2, 3e1, -4.5e-2]
b = [0.1, 0.2,
     0.3]

[nonlinearity]
g = "rational_cubic"
g_params = { scale = 2.5, scale_by_a = true }

[certificate]
check = false
)";
    const auto root = toml::parse(text);
    const auto& mesh = root.at("mesh").as_table();
    CHECK(mesh.at("points").as_array().size() == 3);
    CHECK(mesh.at("points").as_array()[1].as_double() == 0.5);

    const auto& coef = root.at("coefficients").as_table();
    CHECK(coef.at("a").as_array()[2].as_double() == 30.0);
    CHECK(coef.at("a").as_array()[3].as_double() == doctest::Approx(-0.045));
    CHECK(coef.at("b").as_array().size() == 3); // multi-line array

    const auto& nl = root.at("nonlinearity").as_table();
    CHECK(nl.at("g").as_string() == "rational_cubic");
    CHECK(nl.at("g_params").as_table().at("scale").as_double() == 2.5);
    CHECK(nl.at("g_params").as_table().at("scale_by_a").as_bool());

    CHECK_FALSE(root.at("certificate").as_table().at("check").as_bool());
}

TEST_CASE("toml errors carry line numbers") {
    try {
        toml::parse("[mesh]\npoints = [0.5\n");
        FAIL("expected ParseError");
    } catch (const toml::ParseError& e) {
        CHECK(e.line >= 2);
    }

    try {
        toml::parse("[mesh]\npoints = oops\n");
        FAIL("expected ParseError");
    } catch (const toml::ParseError& e) {
        CHECK(e.line == 2);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }

    CHECK_THROWS_AS(toml::parse("key = 1\nkey = 2\n"), toml::ParseError);
}

TEST_CASE("parser survives mangled input without crashing") {
    // Random mutations of a valid document must either parse or throw
    // ParseError; anything else (crash, hang, foreign exception) fails.
    const std::string seed_doc = R"([mesh]
points = [0.25, 0.5]
[coefficients]
a = [1.0, 2.0, 3.0]
b = [0.1, -4e-2]
[nonlinearity]
g = "rational_cubic"
g_params = { scale = 1.5, scale_by_a = true }
)";
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<std::size_t> pos(0, seed_doc.size() - 1);
    std::uniform_int_distribution<int> byte(0, 255);
    std::uniform_int_distribution<int> ops(1, 6);

    for (int rep = 0; rep < 2000; ++rep) {
        std::string doc = seed_doc;
        const int edits = ops(rng);
        for (int e = 0; e < edits; ++e) {
            const std::size_t at = pos(rng) % doc.size();
            switch (ops(rng) % 3) {
                case 0: doc[at] = static_cast<char>(byte(rng)); break;
                case 1: doc.erase(at, 1); break;
                default: doc.insert(at, 1, static_cast<char>(byte(rng))); break;
            }
            if (doc.empty()) doc = "x";
        }
        try {
            (void)toml::parse(doc);
        } catch (const toml::ParseError&) {
            // expected for most mutations
        }
    }
    CHECK(true); // reaching here means no crash or stray exception
}

TEST_CASE("minimal problem file loads a linear problem") {
    const std::string text = R"(
[mesh]
points = [0.5]
[coefficients]
a = [1.0, 1.0]
b = [3.0]
)";
    const auto loaded = parse_problem_text(text);
    CHECK(loaded.problem.node_count() == 1);
    CHECK(loaded.problem.g.entry.is_none());
    CHECK(loaded.problem.h[0].is_none());
    CHECK(loaded.g_name == "none");
    CHECK(loaded.modes == 12);
    CHECK(loaded.certificate_check);
    CHECK(loaded.solver.gradient_tol == 1e-10);
}

TEST_CASE("example problem file assembles the full nonlinearity") {
    const std::string text = R"(
[mesh]
points = [0.5]
[coefficients]
a = [493.48022005446789, 493.48022005446789]
b = [3.0]
[nonlinearity]
g = "rational_cubic"
g_params = { scale_by_a = true }
h = ["cubic_plus_square"]
[solver]
modes = 10
quad_order = 32
gradient_tol = 1e-11
max_iters = 80
radii = [0.5, 2.0, 8.0]
seed = 7
)";
    const auto loaded = parse_problem_text(text);
    CHECK(loaded.problem.g.scale_by_a);
    CHECK(loaded.g_name == "rational_cubic");
    CHECK(loaded.h_names[0] == "cubic_plus_square");
    CHECK(loaded.modes == 10);
    CHECK(loaded.quad_order == 32);
    CHECK(loaded.solver.max_iters == 80);
    CHECK(loaded.solver.seed == 7);

    // f(x, t) = a (t^3 + t^2)/(t^2 + 1).
    const double a = 493.48022005446789;
    CHECK(loaded.problem.f(1, 1.0) == doctest::Approx(a).epsilon(1e-14));
    CHECK(loaded.problem.impulse(1, 1.0) == doctest::Approx(3.0 + 2.0));
}

TEST_CASE("schema violations name the offending key") {
    const std::string base = R"(
[mesh]
points = [0.5]
[coefficients]
)";
    CHECK_THROWS_WITH_AS(parse_problem_text(base + "a = [1.0, 1.0]\nb = [1.0, 2.0]\n"),
                         doctest::Contains("\"b\""), SchemaError);
    CHECK_THROWS_WITH_AS(parse_problem_text(base + "a = [1.0]\nb = [1.0]\n"),
                         doctest::Contains("\"a\""), SchemaError);
    CHECK_THROWS_WITH_AS(parse_problem_text("[mesh]\npoints = [0.5]\ntypo = 1\n"
                                            "[coefficients]\na = [1.0, 1.0]\nb = [1.0]\n"),
                         doctest::Contains("\"typo\""), SchemaError);
    CHECK_THROWS_WITH_AS(
        parse_problem_text(base + "a = [1.0, 1.0]\nb = [1.0]\n[nonlinearity]\ng = \"zap\"\n"),
        doctest::Contains("unknown nonlinearity"), SchemaError);
    CHECK_THROWS_AS(parse_problem_text("[mesh]\npoints = [0.5]\n"), SchemaError);
}

TEST_CASE("h broadcast and per-node lists") {
    const std::string two_nodes = R"(
[mesh]
points = [0.3, 0.7]
[coefficients]
a = [0.0, 0.0, 0.0]
b = [1.0, 2.0]
[nonlinearity]
h = ["cubic"]
)";
    const auto loaded = parse_problem_text(two_nodes);
    CHECK(loaded.h_names == std::vector<std::string>{"cubic", "cubic"});

    const std::string distinct = R"(
[mesh]
points = [0.3, 0.7]
[coefficients]
a = [0.0, 0.0, 0.0]
b = [1.0, 2.0]
[nonlinearity]
h = ["cubic", "cubic_plus_square"]
)";
    CHECK(parse_problem_text(distinct).h_names[1] == "cubic_plus_square");
}
