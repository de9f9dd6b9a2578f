#pragma once

// Independent, non-variational verification path: piecewise integration of
// u'' = -f(x, u) with the exact slope drop u'(x_j+) = u'(x_j-) - iota_j(u(x_j))
// applied algebraically at every node (nodes are hard integration
// boundaries), the exact affine transfer map of the linear impulse problem,
// slope bisection for solutions of the boundary value problem, and residual
// reports for candidate solutions.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "impulsive/galerkin.hpp"
#include "impulsive/problem.hpp"

namespace impulsive {

// Exact terminal value u(1) of the piecewise-affine solution of the linear
// impulse problem with u(0) = 0, u'(0+) = 1: across subinterval j the
// solution is affine, at x_j the slope drops by b_j u(x_j). A zero terminal
// value certifies membership of b in the resonance set. Shares no code with
// resonance_det.
double linear_transfer(const ImpulseMesh& mesh, std::span<const double> b);

struct JumpRecord {
    double x = 0.0;
    double u = 0.0;
    double slope_before = 0.0;
    double slope_after = 0.0;
};

struct Trajectory {
    std::vector<double> x;  // sample locations, ascending, 0 and 1 included
    std::vector<double> u;
    std::vector<double> du;
    std::vector<JumpRecord> jumps; // one per interior node
    double initial_slope = 0.0;
    double terminal_value = 0.0; // u(1)
    double terminal_slope = 0.0;

    // Sample value at an interior node (exact: nodes are forced samples).
    double value_at_node(const ImpulseMesh& mesh, std::size_t l) const;
};

struct ShootError : std::runtime_error {
    ShootError(const std::string& msg, double x) : std::runtime_error(msg), x_reached(x) {}
    double x_reached;
};

// Adaptive Dormand-Prince 5(4) at local tolerance integrator_tol; samples at
// accepted steps. Throws ShootError on step-size underflow.
Trajectory shoot(const ProblemSpec& problem, double initial_slope, double integrator_tol);

// Same integration, but sampled exactly at the given ascending locations
// (each is forced to be a step boundary). sample_x must cover [0, 1].
Trajectory shoot_sampled(const ProblemSpec& problem, double initial_slope,
                         double integrator_tol, std::span<const double> sample_x);

// Fixed uniform steps per subinterval, no error control; used to measure the
// integrator's convergence order.
Trajectory shoot_fixed(const ProblemSpec& problem, double initial_slope,
                       std::size_t steps_per_subinterval);

// Scans initial slopes on a uniform grid over [slope_lo, slope_hi], bisects
// every sign change of u(1; s) to width tol, merges roots closer than
// 10 tol, and returns one trajectory per root.
std::vector<Trajectory> bisect_solutions(const ProblemSpec& problem, double slope_lo,
                                         double slope_hi, std::size_t grid, double tol,
                                         double integrator_tol = 1e-11);

struct ResidualReport {
    double ode_residual = 0.0;            // max |-u'' - f(x, u)| away from nodes
    std::vector<double> jump_residuals;   // per node
    double boundary_left = 0.0;           // |u(0)|
    double boundary_right = 0.0;          // |u(1)|
    double weak_residual = 0.0;           // sup over test functions

    double max_jump() const;
    double max_residual() const;
    bool passes(double tau) const { return max_residual() <= tau; }
};

struct SampledFunction {
    std::vector<double> x; // ascending, must cover [0, 1] and every node
    std::vector<double> u;
};

// Candidate-based residuals: second derivatives by stride-adaptive 5-point
// differencing on a 2048-point grid per subinterval, one-sided slopes at the
// nodes, and the weak-form defect against a 16-mode test basis.
ResidualReport verify_solution(const ProblemSpec& problem, const GalerkinBasis& basis,
                               const CoefficientVector& c);
ResidualReport verify_solution(const ProblemSpec& problem, const SampledFunction& s);

// Residuals of the exact flow launched at initial_slope: ode/jump residuals
// of the integrated trajectory, |u(1)| as the right boundary residual, and
// the weak-form defect of the trajectory itself. Returns the dense
// trajectory alongside.
struct ShootVerification {
    Trajectory trajectory;
    ResidualReport residuals;
};
ShootVerification verify_by_shooting(const ProblemSpec& problem, double initial_slope,
                                     double integrator_tol = 1e-11);

} // namespace impulsive
