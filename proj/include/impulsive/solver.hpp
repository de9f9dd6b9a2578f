#pragma once

// Critical points of the discretized energy: damped Newton on the gradient
// with a least-squares fallback, plus a saddle-structured multistart that
// seeds along coordinate directions ordered by the two-sided splitting
// (impulse-carrying and below-slope sine directions first).

#include <cstddef>
#include <cstdint>
#include <vector>

#include "impulsive/galerkin.hpp"
#include "impulsive/linalg.hpp"
#include "impulsive/problem.hpp"
#include "impulsive/shooting.hpp"

namespace impulsive {

struct SolverOptions {
    std::size_t max_iters = 60;
    double gradient_tol = 1e-10;
    double trust_radius_init = 1.0;
    std::vector<double> radii = {0.5, 2.0, 8.0};
    std::size_t directions_per_radius = 0; // 0 means 2 dim + 2
    double dedup_distance = 1e-5;
    std::uint64_t seed = 0;
    std::size_t refine_modes = 32;   // polish basis for saddle_search results
    double integrator_tol = 1e-11;   // shooting verification tolerance
    std::size_t jobs = 1;            // concurrent multistart workers
};

struct CriticalPoint {
    CoefficientVector coeffs;     // on the basis the point was polished with
    std::size_t basis_modes = 0;
    std::size_t basis_quad_order = 0;
    double energy = 0.0;
    double gradient_norm = 0.0;
    linalg::Inertia inertia;      // of the Hessian at the point
    bool converged = false;
    bool trivial = false;         // |u|_H <= dedup_distance
    std::vector<double> node_values;
    double initial_slope = 0.0;   // u'(0+) of the candidate

    // Verification through the shooting oracle: the candidate's initial
    // slope is polished on the shooting map, the resulting exact trajectory
    // supplies ode/jump/boundary residuals, and the weak residual is
    // measured on the candidate itself.
    ResidualReport verification;
    double witness_slope = 0.0;
    double witness_node_distance = 0.0; // max_l |u_cand(x_l) - u_traj(x_l)|
};

CriticalPoint newton_critical_point(const ProblemSpec& problem, const GalerkinBasis& basis,
                                    const CoefficientVector& init,
                                    const SolverOptions& opts);

// Multistart Newton over radial seeds (+/- coordinate directions plus seeded
// random directions per radius), deduplicated by coefficient distance,
// polished at refine_modes, verified by shooting. Results are ordered by
// ascending energy.
std::vector<CriticalPoint> saddle_search(const ProblemSpec& problem,
                                         const GalerkinBasis& basis,
                                         const SolverOptions& opts);

// Zero-pads the per-subinterval sine blocks from one basis into a finer one.
CoefficientVector embed_coefficients(const GalerkinBasis& from, const GalerkinBasis& to,
                                     const CoefficientVector& c);

} // namespace impulsive
