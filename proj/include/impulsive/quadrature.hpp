#pragma once

// Gauss-Legendre rules on [-1, 1] and their affine images.

#include <cstddef>
#include <vector>

namespace impulsive::quad {

struct Rule {
    std::vector<double> nodes;   // ascending in (-1, 1)
    std::vector<double> weights; // positive, sum to 2
};

// n-point Gauss-Legendre rule; exact for polynomials of degree 2n - 1.
// Nodes are computed by Newton iteration on P_n and are accurate to ~1 ulp.
Rule gauss_legendre(std::size_t n);

// Rule mapped to [a, b]; weights carry the Jacobian (b - a) / 2.
Rule mapped(const Rule& reference, double a, double b);

} // namespace impulsive::quad
