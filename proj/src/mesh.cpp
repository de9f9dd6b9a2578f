#include "impulsive/mesh.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace impulsive {

namespace {
constexpr double kMinSeparation = 1e-10; // keeps the Gram matrix usable

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }
} // namespace

ImpulseMesh::ImpulseMesh(std::vector<double> interior_points)
    : points_(std::move(interior_points)) {
    if (points_.empty()) fail("mesh: interior point list is empty");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const double x = points_[i];
        if (!std::isfinite(x)) fail("mesh: point " + std::to_string(i + 1) + " is not finite");
        if (x <= 0.0 || x >= 1.0)
            fail("mesh: point " + std::to_string(i + 1) + " = " + std::to_string(x) +
                 " lies outside (0, 1)");
    }
    for (std::size_t i = 1; i < points_.size(); ++i) {
        const double gap = points_[i] - points_[i - 1];
        if (gap < 0.0)
            fail("mesh: point " + std::to_string(i + 1) + " is not strictly increasing");
        if (gap < kMinSeparation)
            fail("mesh: points " + std::to_string(i) + " and " + std::to_string(i + 1) +
                 " are duplicates (separation below 1e-10)");
    }
    if (points_.front() < kMinSeparation || 1.0 - points_.back() < kMinSeparation)
        fail("mesh: point too close to a boundary (separation below 1e-10)");

    const std::size_t m = points_.size();
    lengths_.resize(m + 1);
    lengths_[0] = points_[0];
    for (std::size_t i = 1; i < m; ++i) lengths_[i] = points_[i] - points_[i - 1];
    lengths_[m] = 1.0 - points_[m - 1];

    double total = 0.0;
    for (double l : lengths_) total += l;
    if (std::abs(total - 1.0) > 1e-14) fail("mesh: subinterval lengths do not sum to 1");

    // G_jk = w_j(x_k) = min(x_j, x_k) (1 - max(x_j, x_k)); built once, mirrored.
    gram_ = linalg::Matrix(m, m);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = j; k < m; ++k) {
            const double v = points_[j] * (1.0 - points_[k]);
            gram_(j, k) = v;
            gram_(k, j) = v;
        }
}

double ImpulseMesh::boundary_node(std::size_t j) const {
    if (j == 0) return 0.0;
    if (j == points_.size() + 1) return 1.0;
    return node(j);
}

double ImpulseMesh::representer(std::size_t j, double x) const {
    if (j < 1 || j > points_.size())
        fail("representer: index " + std::to_string(j) + " out of range 1.." +
             std::to_string(points_.size()));
    if (x < 0.0 || x > 1.0) fail("representer: x outside [0, 1]");
    const double xj = points_[j - 1];
    // At x == x_j both branches agree at x_j (1 - x_j); take the right one.
    return x < xj ? (1.0 - xj) * x : xj * (1.0 - x);
}

double ImpulseMesh::representer_slope(std::size_t j, std::size_t subinterval) const {
    if (j < 1 || j > points_.size()) fail("representer_slope: representer index out of range");
    if (subinterval < 1 || subinterval > lengths_.size())
        fail("representer_slope: subinterval index out of range");
    const double xj = points_[j - 1];
    return subinterval <= j ? (1.0 - xj) : -xj;
}

bool ImpulseMesh::equally_spaced(double tol) const {
    const double target = 1.0 / static_cast<double>(lengths_.size());
    for (double l : lengths_)
        if (std::abs(l - target) > tol) return false;
    return true;
}

ImpulseMesh build_mesh(std::vector<double> points) { return ImpulseMesh(std::move(points)); }

SubspaceNorms m_subspace_norms(const ImpulseMesh& mesh, std::span<const double> c) {
    const std::size_t m = mesh.interior_count();
    if (c.size() != m) fail("m_subspace_norms: coefficient length != m");
    const auto values = m_node_values(mesh, c);
    double quad = 0.0;
    for (std::size_t j = 0; j < m; ++j) quad += c[j] * values[j]; // c^T G c
    double node_max = 0.0;
    for (double v : values) node_max = std::max(node_max, std::abs(v));
    return {std::sqrt(std::max(quad, 0.0)), node_max};
}

std::vector<double> m_node_values(const ImpulseMesh& mesh, std::span<const double> c) {
    if (c.size() != mesh.interior_count()) fail("m_node_values: coefficient length != m");
    return linalg::matvec(mesh.gram(), c);
}

} // namespace impulsive
