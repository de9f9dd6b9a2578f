#pragma once

// Impulse mesh 0 = x_0 < x_1 < ... < x_m < x_{m+1} = 1, the Riesz
// representers w_j of point evaluation in H^1_0(0,1) (piecewise affine with
// a kink at x_j), and the Gram matrix G_jk = <w_j, w_k> = w_j(x_k).
//
// All data is computed at construction and immutable afterwards; instances
// are safe to share across threads.

#include <cstddef>
#include <span>
#include <vector>

#include "impulsive/linalg.hpp"

namespace impulsive {

class ImpulseMesh {
public:
    // Points must be strictly increasing, each in (0, 1), separated by at
    // least 1e-10. Throws std::invalid_argument naming the offending index.
    explicit ImpulseMesh(std::vector<double> interior_points);

    std::size_t interior_count() const { return points_.size(); } // m
    std::size_t subinterval_count() const { return points_.size() + 1; } // m + 1

    // Interior node x_j, 1-based (j in 1..m).
    double node(std::size_t j) const { return points_.at(j - 1); }
    std::span<const double> interior_points() const { return points_; }

    // x_0 = 0 and x_{m+1} = 1 included, index 0..m+1.
    double boundary_node(std::size_t j) const;

    // l_j = x_j - x_{j-1}, 1-based (j in 1..m+1).
    double length(std::size_t j) const { return lengths_.at(j - 1); }
    std::span<const double> lengths() const { return lengths_; }

    // w_j(x): (1 - x_j) x left of the kink, x_j (1 - x) right of it.
    // j is 1-based; x must lie in [0, 1].
    double representer(std::size_t j, double x) const;

    // Slope of w_j on subinterval i (both 1-based): (1 - x_j) if the
    // subinterval lies left of x_j, -x_j otherwise.
    double representer_slope(std::size_t j, std::size_t subinterval) const;

    // Cached Gram matrix, m x m, symmetric positive definite.
    const linalg::Matrix& gram() const { return gram_; }

    bool equally_spaced(double tol = 1e-12) const;

private:
    std::vector<double> points_;
    std::vector<double> lengths_;
    linalg::Matrix gram_;
};

ImpulseMesh build_mesh(std::vector<double> points);

struct SubspaceNorms {
    double h_norm;   // sqrt(c^T G c)
    double node_max; // max_l |sum_j c_j G_jl|
};

// Norms of w = sum_j c_j w_j in the representer subspace; c has length m.
SubspaceNorms m_subspace_norms(const ImpulseMesh& mesh, std::span<const double> c);

// Node values (sum_j c_j w_j)(x_l) = (G c)_l.
std::vector<double> m_node_values(const ImpulseMesh& mesh, std::span<const double> c);

} // namespace impulsive
