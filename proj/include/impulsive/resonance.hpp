#pragma once

// Resonance set B = { b : det(b_j w_k(x_j) - delta_jk) = 0 }, the M-restricted
// Hessian A = G - G diag(b) G at zero, its Morse index and critical-group
// table, scans of b-paths for B-crossings, and the nontriviality certificate.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "impulsive/linalg.hpp"
#include "impulsive/mesh.hpp"
#include "impulsive/problem.hpp"
#include "impulsive/spectral.hpp"

namespace impulsive {

struct ResonanceValue {
    double det = 0.0;      // det(diag(b) G - I); equals (-1)^m at b = 0
    bool in_B = false;     // |det| <= threshold
    double threshold = 0.0;
};

// b has length m. Exact dense determinant; in_B uses the scale-aware
// threshold 1e-10 (1 + |b|_inf |G|_inf)^m.
ResonanceValue resonance_det(const ImpulseMesh& mesh, std::span<const double> b);

struct CriticalGroupTable {
    bool defined = true; // false when the Hessian is degenerate (b in B)
    int nonzero_q = 0;   // the Morse index m0; C_q = G there, 0 elsewhere
    int q_max = 0;       // table covers q = 0..m
    std::string group = "G"; // coefficient group, kept symbolic
};

struct MorseReport {
    linalg::Matrix matrix;           // A, m x m symmetric
    std::vector<double> eigenvalues; // ascending
    int m0 = 0;                      // negative eigenvalue count
    bool nondegenerate = true;
    double zero_tol = 0.0;           // 1e-10 (1 + |A|_inf)
    CriticalGroupTable critical_groups;
};

MorseReport morse_report(const ImpulseMesh& mesh, std::span<const double> b);

struct PathSample {
    double t = 0.0;
    std::vector<double> b;
    double det = 0.0;
    int m0 = 0;
};

struct PathCrossing {
    double t = 0.0;              // refined location along the path
    std::vector<double> b;
    int m0_before = 0, m0_after = 0;
    int multiplicity = 0;        // near-zero eigenvalues of A at the crossing
};

struct PathScanReport {
    std::vector<PathSample> samples;
    std::vector<PathCrossing> crossings;
    bool m0_constant_between_crossings = true;
};

// Samples b(t) = b_start + t (b_end - b_start) at `steps` points, brackets
// every det sign change and refines it by bisection until the bracket width
// in b-space drops below refine_width. Endpoints inside B are rejected.
PathScanReport resonance_path_scan(const ImpulseMesh& mesh,
                                   std::span<const double> b_start,
                                   std::span<const double> b_end, std::size_t steps,
                                   double refine_width = 1e-10);

struct HypothesisCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Certificate {
    std::vector<HypothesisCheck> hypotheses;
    bool hypotheses_pass = false;

    // Some subinterval slope exceeds its first Dirichlet eigenvalue.
    bool slope_above_first_eigenvalue = false;
    int slope_witness = 0; // 1-based subinterval, 0 when absent

    // The quadratic form of A attains a nonnegative value on M \ {0},
    // i.e. lambda_max(A) >= 0, i.e. m0 < m.
    bool quadratic_form_nonnegative = false;
    double lambda_max = 0.0;
    std::vector<double> direction_witness; // eigenvector of lambda_max (w-basis)

    // Some impulse slope sits at or below the hat-function threshold
    // (x_{j+1} - x_{j-1}) / ((x_{j+1} - x_j)(x_j - x_{j-1})).
    bool impulse_below_hat_threshold = false;
    int hat_witness = 0;
    std::vector<double> hat_thresholds;

    int k_saddle = 0;
    int m0 = 0;

    bool equally_spaced = false;
    double equal_spacing_lambda1 = 0.0;    // (m+1)^2 pi^2
    double equal_spacing_b_threshold = 0.0; // 2 (m+1)
    bool equal_spacing_a_exceeds = false;
    bool equal_spacing_b_below = false;

    bool guaranteed = false;
    std::string conclusion;
};

// Evaluates every hypothesis and condition; failures are recorded in the
// certificate, never thrown.
Certificate nontriviality_certificate(const ProblemSpec& problem, double rel_tol = 1e-9);

} // namespace impulsive
