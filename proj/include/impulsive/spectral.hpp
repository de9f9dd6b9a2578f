#pragma once

// Per-subinterval Dirichlet spectra sigma_j = { k^2 pi^2 / l_j^2 }, the
// nonresonance margins of the slopes a_j, the counts d_j of eigenvalues
// below a_j, and the resulting two-class split of subintervals together
// with the saddle dimension k_saddle = sum_{j in J1} d_j + m.

#include <cstddef>
#include <span>
#include <vector>

#include "impulsive/mesh.hpp"

namespace impulsive {

// k-th Dirichlet eigenvalue of -d^2/dx^2 on subinterval j (both 1-based).
double subinterval_eigenvalue(const ImpulseMesh& mesh, std::size_t j, std::size_t k);

struct SubintervalSpectrum {
    double length = 0.0;
    double a = 0.0;
    std::vector<double> eigenvalues; // lambda_1 .. lambda_{cutoff}, ascending
    bool nonresonant = true;         // min_k |a - lambda_k| > rel_tol * lambda_k at nearest k
    double margin = 0.0;             // min_k |a - lambda_k|
    double rel_margin = 0.0;         // margin / nearest eigenvalue
    int d = 0;                       // #{k : lambda_k < a}
    bool below_first = true;         // d == 0 (the J0 class)
};

struct SpectralReport {
    std::vector<SubintervalSpectrum> subintervals; // index j - 1
    int k_saddle = 0;                              // sum over J1 of d_j, plus m
    bool all_nonresonant = true;
};

// a has length m + 1; rel_tol > 0. Resonance proximity is reported, never thrown.
SpectralReport spectral_report(const ImpulseMesh& mesh, std::span<const double> a,
                               double rel_tol = 1e-9);

} // namespace impulsive
