#pragma once

// Finite-dimensional trial space respecting the orthogonal splitting of
// H^1_0(0,1) into per-subinterval sine modes (vanishing at every mesh node)
// and the representer span M. For mode count n per subinterval the basis is
//
//   phi_{j,k}(x) = sin(k pi (x - x_{j-1}) / l_j) * sqrt(2 l_j) / (k pi),
//   k = 1..n on subinterval j, H-normalized, plus w_1 .. w_m,
//
// with total dimension (m + 1) n + m. The H-Gram of this basis is block
// diagonal: identity on the sine part, the mesh Gram G on the M part.
// Coefficient vectors are laid out sine-blocks-first, then the M block.
//
// Values and derivatives at the Gauss-Legendre nodes are tabulated once at
// construction; energy/gradient/Hessian assembly reduces to weighted dot
// products over those tables (see impulsive::kernels).

#include <cstddef>
#include <span>
#include <vector>

#include "impulsive/linalg.hpp"
#include "impulsive/mesh.hpp"
#include "impulsive/problem.hpp"
#include "impulsive/quadrature.hpp"

namespace impulsive {

using CoefficientVector = std::vector<double>;

class GalerkinBasis {
public:
    // Requires modes >= 1 and quad_order >= 2 modes + 4; verifies the
    // discrete H-orthonormality of the tables to 1e-10 and throws when the
    // quadrature cannot deliver it.
    GalerkinBasis(ImpulseMesh mesh, std::size_t modes, std::size_t quad_order);

    const ImpulseMesh& mesh() const { return mesh_; }
    std::size_t modes() const { return modes_; }
    std::size_t quad_order() const { return quad_order_; }

    std::size_t dimension() const;
    std::size_t sine_index(std::size_t j, std::size_t k) const; // 1-based j, k
    std::size_t m_index(std::size_t l) const;                   // 1-based l

    struct SubintervalTables {
        std::vector<double> nodes;
        std::vector<double> weights;
        linalg::Matrix phi;          // modes x Q sine values
        linalg::Matrix dphi;         // modes x Q sine derivatives
        linalg::Matrix wval;         // m x Q representer values
        std::vector<double> wslope;  // m representer slopes (constant here)
    };
    const SubintervalTables& tables(std::size_t j) const { return tables_.at(j - 1); }

    double orthonormality_defect() const { return defect_; }

    double sine_value(std::size_t j, std::size_t k, double x) const;
    double sine_derivative(std::size_t j, std::size_t k, double x) const;

    // Subinterval containing x (1-based); x == x_j maps to the right side
    // except at x = 1.
    std::size_t subinterval_of(double x) const;

    double eval(const CoefficientVector& c, double x) const;

    enum class Side { Left, Right };
    // One-sided derivative; the side only matters at mesh nodes.
    double eval_derivative(const CoefficientVector& c, double x, Side side) const;

    // u(x_l) for l = 1..m: the sine part vanishes there, so this is G c_M.
    std::vector<double> node_values(const CoefficientVector& c) const;

    // |u|_H^2 = sum c_sine^2 + c_M^T G c_M.
    double h_norm_sq(const CoefficientVector& c) const;

    // u values at every quadrature node of subinterval j.
    std::vector<double> values_at_quadrature(const CoefficientVector& c,
                                             std::size_t j) const;

private:
    void check_dim(const CoefficientVector& c) const;

    ImpulseMesh mesh_;
    std::size_t modes_;
    std::size_t quad_order_;
    std::vector<SubintervalTables> tables_;
    double defect_ = 0.0;
};

GalerkinBasis build_basis(const ImpulseMesh& mesh, std::size_t modes,
                          std::size_t quad_order);

// Phi(u) = 1/2 |u|_H^2 - int F(x, u) - sum_l I_l(u(x_l)).
double energy(const ProblemSpec& problem, const GalerkinBasis& basis,
              const CoefficientVector& c);

// Component against basis function e: <u, e> - int f(x, u) e - sum_l
// iota_l(u(x_l)) e(x_l). Sine components carry no impulse term.
CoefficientVector gradient(const ProblemSpec& problem, const GalerkinBasis& basis,
                           const CoefficientVector& c);

// Entry (e, e'): <e, e'> - int f_t(x, u) e e' - sum_l iota_l'(u(x_l)) e(x_l) e'(x_l).
linalg::Matrix hessian(const ProblemSpec& problem, const GalerkinBasis& basis,
                       const CoefficientVector& c);

} // namespace impulsive
