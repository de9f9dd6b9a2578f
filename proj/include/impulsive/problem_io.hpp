#pragma once

// Problem files (TOML) -> validated ProblemSpec + SolverOptions.
//
//   [mesh]          points = [0.5]
//   [coefficients]  a = [..]           # length m + 1
//                   b = [..]           # length m
//   [nonlinearity]  g = "rational_cubic"
//                   g_params = { scale = 1.0, scale_by_a = false }
//                   h = ["cubic_plus_square"]   # length m, or one name for all
//   [solver]        modes, quad_order, gradient_tol, max_iters, radii, seed
//   [certificate]   check = true
//
// Unknown sections or keys are rejected by name; value errors carry the key.

#include <stdexcept>
#include <string>

#include "impulsive/problem.hpp"
#include "impulsive/solver.hpp"

namespace impulsive {

struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& msg) : std::runtime_error(msg) {}
};

struct LoadedProblem {
    ProblemSpec problem;
    SolverOptions solver;
    std::size_t modes = 12;      // Galerkin modes per subinterval
    std::size_t quad_order = 0;  // 0 means 2 * modes + 10
    bool certificate_check = true;
    std::string g_name = "none";
    std::vector<std::string> h_names;

    std::size_t effective_quad_order() const {
        return quad_order ? quad_order : 2 * modes + 10;
    }
};

LoadedProblem parse_problem_text(const std::string& text);
LoadedProblem parse_problem_file(const std::string& path);

} // namespace impulsive
