#pragma once

// Nonlinearity catalog and assembled problem description.
//
// A problem couples the mesh with slopes a_j (one per subinterval), impulse
// slopes b_j (one per interior node), an optional sublinear perturbation g
// shared by all subintervals, and optional superlinear impulse terms h_j:
//
//   f(x, t)   = a_j t + s_j ghat(t)   on subinterval j,  s_j = scale [* a_j]
//   iota_j(t) = b_j t + h_j(t)        at node x_j.
//
// Catalog entries carry closed-form value/derivative/primitive triples plus
// declared growth metadata; user-supplied triples are accepted through the
// same type.

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "impulsive/mesh.hpp"

namespace impulsive {

struct ScalarFunction {
    std::function<double(double)> value;
    std::function<double(double)> derivative;
    std::function<double(double)> primitive; // antiderivative vanishing at 0
};

enum class GrowthKind {
    None,       // identically zero entry
    Sublinear,  // |v(t)| <= C (|t|^{r-1} + 1) with r in (1, 2)
    Superlinear // t v(t) >= c |t|^mu - C with mu > 2, c > 0
};

struct NonlinearityEntry {
    std::string name = "none";
    ScalarFunction fn;
    GrowthKind kind = GrowthKind::None;
    double growth_r = 0.0;
    double growth_mu = 0.0;
    double growth_c = 0.0;
    double growth_C = 0.0;
    double slope_at_zero = 0.0;

    bool is_none() const { return kind == GrowthKind::None; }
};

// Shipped entries: "none", "rational_cubic" ((t^3 + t^2)/(t^2 + 1) - t,
// slope-normalized), "cubic" (t^3), "cubic_plus_square" (t^3 + t^2),
// "bounded_atan" (atan t). Throws naming the entry when unknown.
const NonlinearityEntry& catalog_entry(const std::string& name);
std::vector<std::string> catalog_names();

// Declared-growth sanity checks, sampled on a uniform grid over [lo, hi].
// These cannot prove the analytic inequalities; they catch blatant
// misdeclarations. "none" entries pass vacuously.
bool sample_sublinear_bound(const NonlinearityEntry& e, double lo = -50.0,
                            double hi = 50.0, std::size_t grid = 10'000);
bool sample_superlinear_bound(const NonlinearityEntry& e, double lo = -50.0,
                              double hi = 50.0, std::size_t grid = 10'000);

// Max relative mismatch between fn.derivative and a central difference of
// fn.value over a sample grid.
double max_derivative_mismatch(const NonlinearityEntry& e, double lo = -5.0,
                               double hi = 5.0, std::size_t grid = 200);

struct GTerm {
    NonlinearityEntry entry; // may be "none"
    double scale = 1.0;
    bool scale_by_a = false; // multiply by a_j on subinterval j
};

struct ProblemSpec {
    ImpulseMesh mesh;
    std::vector<double> a;            // length m + 1
    std::vector<double> b;            // length m
    GTerm g;                          // shared across subintervals
    std::vector<NonlinearityEntry> h; // length m

    std::size_t node_count() const { return mesh.interior_count(); }

    // Effective multiplier of the g entry on subinterval j (1-based).
    double g_scale(std::size_t j) const;

    double f(std::size_t j, double t) const;   // subinterval slope term + g
    double f_t(std::size_t j, double t) const; // d/dt of f
    double F(std::size_t j, double t) const;   // primitive of f in t

    double impulse(std::size_t l, double t) const;           // iota_l(t)
    double impulse_slope(std::size_t l, double t) const;     // iota_l'(t)
    double impulse_primitive(std::size_t l, double t) const; // I_l(t)

    // True when f(., 0) = 0 and iota_l(0) = 0 (zero is a candidate solution).
    bool zero_is_critical(double tol = 1e-14) const;
};

// Validates lengths; empty h is filled with "none" entries.
ProblemSpec make_problem(ImpulseMesh mesh, std::vector<double> a, std::vector<double> b,
                         GTerm g = {}, std::vector<NonlinearityEntry> h = {});

// f = sum a_j chi_j t, iota_l = b_l t: the asymptotic shape with no
// higher-order terms.
ProblemSpec linear_problem(ImpulseMesh mesh, std::vector<double> a, std::vector<double> b);

} // namespace impulsive
