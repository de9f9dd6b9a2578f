#include "impulsive/spectral.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace impulsive {

double subinterval_eigenvalue(const ImpulseMesh& mesh, std::size_t j, std::size_t k) {
    if (j < 1 || j > mesh.subinterval_count())
        throw std::invalid_argument("subinterval_eigenvalue: subinterval index " +
                                    std::to_string(j) + " out of range");
    if (k < 1) throw std::invalid_argument("subinterval_eigenvalue: k must be >= 1");
    const double l = mesh.length(j);
    const double kpi = static_cast<double>(k) * std::numbers::pi;
    return kpi * kpi / (l * l);
}

SpectralReport spectral_report(const ImpulseMesh& mesh, std::span<const double> a,
                               double rel_tol) {
    const std::size_t m = mesh.interior_count();
    if (a.size() != m + 1)
        throw std::invalid_argument("spectral_report: a must have length m + 1 = " +
                                    std::to_string(m + 1));
    if (!(rel_tol > 0.0)) throw std::invalid_argument("spectral_report: rel_tol must be > 0");

    SpectralReport report;
    report.subintervals.resize(m + 1);
    int saddle = static_cast<int>(m);

    for (std::size_t j = 1; j <= m + 1; ++j) {
        SubintervalSpectrum& sub = report.subintervals[j - 1];
        sub.length = mesh.length(j);
        sub.a = a[j - 1];

        // List eigenvalues up to the first one exceeding a_j, then one extra:
        // enough to determine both d_j and the distance to the nearest one.
        std::size_t k = 1;
        double lambda = subinterval_eigenvalue(mesh, j, 1);
        sub.eigenvalues.push_back(lambda);
        while (lambda <= sub.a) {
            ++k;
            lambda = subinterval_eigenvalue(mesh, j, k);
            sub.eigenvalues.push_back(lambda);
        }
        sub.eigenvalues.push_back(subinterval_eigenvalue(mesh, j, k + 1));

        sub.d = 0;
        double margin = std::numeric_limits<double>::infinity();
        double nearest = sub.eigenvalues.front();
        for (double lambda : sub.eigenvalues) {
            if (lambda < sub.a) ++sub.d;
            const double gap = std::abs(sub.a - lambda);
            if (gap < margin) {
                margin = gap;
                nearest = lambda;
            }
        }
        sub.margin = margin;
        sub.rel_margin = margin / nearest;
        sub.nonresonant = margin > rel_tol * nearest;
        sub.below_first = (sub.d == 0);

        if (!sub.nonresonant) report.all_nonresonant = false;
        if (!sub.below_first) saddle += sub.d;
    }
    report.k_saddle = saddle;
    return report;
}

} // namespace impulsive
