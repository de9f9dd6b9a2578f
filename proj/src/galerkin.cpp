#include "impulsive/galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "impulsive/kernels.hpp"

namespace impulsive {

namespace {
constexpr double kOrthoTol = 1e-10;
}

GalerkinBasis::GalerkinBasis(ImpulseMesh mesh, std::size_t modes, std::size_t quad_order)
    : mesh_(std::move(mesh)), modes_(modes), quad_order_(quad_order) {
    if (modes_ < 1) throw std::invalid_argument("basis: need at least one mode");
    if (quad_order_ < 2 * modes_ + 4)
        throw std::invalid_argument("basis: quad_order " + std::to_string(quad_order_) +
                                    " too small for " + std::to_string(modes_) +
                                    " modes (need >= 2 n + 4)");

    const std::size_t m = mesh_.interior_count();
    const auto reference = quad::gauss_legendre(quad_order_);
    tables_.reserve(m + 1);

    for (std::size_t j = 1; j <= m + 1; ++j) {
        const double left = mesh_.boundary_node(j - 1);
        const double right = mesh_.boundary_node(j);
        const double len = mesh_.length(j);
        const auto rule = quad::mapped(reference, left, right);

        SubintervalTables t;
        t.nodes = rule.nodes;
        t.weights = rule.weights;
        t.phi = linalg::Matrix(modes_, quad_order_);
        t.dphi = linalg::Matrix(modes_, quad_order_);
        t.wval = linalg::Matrix(m, quad_order_);
        t.wslope.resize(m);

        for (std::size_t k = 1; k <= modes_; ++k) {
            const double freq = static_cast<double>(k) * std::numbers::pi / len;
            const double amp = std::sqrt(2.0 * len) / (static_cast<double>(k) * std::numbers::pi);
            const double damp = std::sqrt(2.0 / len);
            for (std::size_t q = 0; q < quad_order_; ++q) {
                const double s = t.nodes[q] - left;
                t.phi(k - 1, q) = amp * std::sin(freq * s);
                t.dphi(k - 1, q) = damp * std::cos(freq * s);
            }
        }
        for (std::size_t l = 1; l <= m; ++l) {
            t.wslope[l - 1] = mesh_.representer_slope(l, j);
            for (std::size_t q = 0; q < quad_order_; ++q)
                t.wval(l - 1, q) = mesh_.representer(l, t.nodes[q]);
        }
        tables_.push_back(std::move(t));
    }

    // Discrete orthonormality of the H-inner products under the chosen rule.
    double defect = 0.0;
    for (std::size_t j = 1; j <= m + 1; ++j) {
        const auto& t = tables_[j - 1];
        for (std::size_t k = 0; k < modes_; ++k) {
            for (std::size_t k2 = k; k2 < modes_; ++k2) {
                const double ip = kernels::dot3(t.weights, t.dphi.row(k), t.dphi.row(k2));
                defect = std::max(defect, std::abs(ip - (k == k2 ? 1.0 : 0.0)));
            }
            const double dsum = kernels::dot(t.weights, t.dphi.row(k));
            for (std::size_t l = 0; l < m; ++l)
                defect = std::max(defect, std::abs(t.wslope[l] * dsum));
        }
    }
    defect_ = defect;
    if (defect_ > kOrthoTol)
        throw std::invalid_argument(
            "basis: quadrature of order " + std::to_string(quad_order_) +
            " fails the orthonormality check (defect " + std::to_string(defect_) + ")");
}

std::size_t GalerkinBasis::dimension() const {
    const std::size_t m = mesh_.interior_count();
    return (m + 1) * modes_ + m;
}

std::size_t GalerkinBasis::sine_index(std::size_t j, std::size_t k) const {
    return (j - 1) * modes_ + (k - 1);
}

std::size_t GalerkinBasis::m_index(std::size_t l) const {
    return (mesh_.interior_count() + 1) * modes_ + (l - 1);
}

double GalerkinBasis::sine_value(std::size_t j, std::size_t k, double x) const {
    const double left = mesh_.boundary_node(j - 1);
    const double len = mesh_.length(j);
    const double kpi = static_cast<double>(k) * std::numbers::pi;
    return std::sin(kpi * (x - left) / len) * std::sqrt(2.0 * len) / kpi;
}

double GalerkinBasis::sine_derivative(std::size_t j, std::size_t k, double x) const {
    const double left = mesh_.boundary_node(j - 1);
    const double len = mesh_.length(j);
    const double kpi = static_cast<double>(k) * std::numbers::pi;
    return std::cos(kpi * (x - left) / len) * std::sqrt(2.0 / len);
}

std::size_t GalerkinBasis::subinterval_of(double x) const {
    const auto pts = mesh_.interior_points();
    const std::size_t idx = static_cast<std::size_t>(
        std::upper_bound(pts.begin(), pts.end(), x) - pts.begin());
    return std::min(idx + 1, mesh_.subinterval_count());
}

void GalerkinBasis::check_dim(const CoefficientVector& c) const {
    if (c.size() != dimension())
        throw std::invalid_argument("coefficient vector has length " +
                                    std::to_string(c.size()) + ", basis dimension is " +
                                    std::to_string(dimension()));
}

double GalerkinBasis::eval(const CoefficientVector& c, double x) const {
    check_dim(c);
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("eval: x outside [0, 1]");
    const std::size_t j = subinterval_of(x);
    double v = 0.0;
    for (std::size_t k = 1; k <= modes_; ++k)
        v += c[sine_index(j, k)] * sine_value(j, k, x);
    for (std::size_t l = 1; l <= mesh_.interior_count(); ++l)
        v += c[m_index(l)] * mesh_.representer(l, x);
    return v;
}

double GalerkinBasis::eval_derivative(const CoefficientVector& c, double x,
                                      Side side) const {
    check_dim(c);
    std::size_t j = subinterval_of(x);
    // At an interior node, Side::Left selects the subinterval ending there.
    if (side == Side::Left) {
        for (std::size_t l = 1; l <= mesh_.interior_count(); ++l)
            if (x == mesh_.node(l)) {
                j = l;
                break;
            }
    }
    double v = 0.0;
    for (std::size_t k = 1; k <= modes_; ++k)
        v += c[sine_index(j, k)] * sine_derivative(j, k, x);
    for (std::size_t l = 1; l <= mesh_.interior_count(); ++l)
        v += c[m_index(l)] * mesh_.representer_slope(l, j);
    return v;
}

std::vector<double> GalerkinBasis::node_values(const CoefficientVector& c) const {
    check_dim(c);
    const std::size_t m = mesh_.interior_count();
    std::vector<double> cm(c.end() - static_cast<std::ptrdiff_t>(m), c.end());
    return m_node_values(mesh_, cm);
}

double GalerkinBasis::h_norm_sq(const CoefficientVector& c) const {
    check_dim(c);
    const std::size_t m = mesh_.interior_count();
    const std::size_t sine_total = (m + 1) * modes_;
    double sq = 0.0;
    for (std::size_t i = 0; i < sine_total; ++i) sq += c[i] * c[i];
    std::span<const double> cm{c.data() + sine_total, m};
    const auto gcm = linalg::matvec(mesh_.gram(), cm);
    for (std::size_t l = 0; l < m; ++l) sq += cm[l] * gcm[l];
    return sq;
}

std::vector<double> GalerkinBasis::values_at_quadrature(const CoefficientVector& c,
                                                        std::size_t j) const {
    check_dim(c);
    const auto& t = tables(j);
    std::vector<double> u(quad_order_, 0.0);
    for (std::size_t k = 1; k <= modes_; ++k)
        kernels::axpy(c[sine_index(j, k)], t.phi.row(k - 1), u);
    for (std::size_t l = 1; l <= mesh_.interior_count(); ++l)
        kernels::axpy(c[m_index(l)], t.wval.row(l - 1), u);
    return u;
}

GalerkinBasis build_basis(const ImpulseMesh& mesh, std::size_t modes,
                          std::size_t quad_order) {
    return GalerkinBasis(mesh, modes, quad_order);
}

double energy(const ProblemSpec& problem, const GalerkinBasis& basis,
              const CoefficientVector& c) {
    double phi = 0.5 * basis.h_norm_sq(c);

    const std::size_t nsub = basis.mesh().subinterval_count();
    std::vector<double> fbuf;
    for (std::size_t j = 1; j <= nsub; ++j) {
        const auto& t = basis.tables(j);
        const auto u = basis.values_at_quadrature(c, j);
        fbuf.resize(u.size());
        for (std::size_t q = 0; q < u.size(); ++q) fbuf[q] = problem.F(j, u[q]);
        phi -= kernels::dot(t.weights, fbuf);
    }

    const auto nv = basis.node_values(c);
    for (std::size_t l = 1; l <= nv.size(); ++l)
        phi -= problem.impulse_primitive(l, nv[l - 1]);
    return phi;
}

CoefficientVector gradient(const ProblemSpec& problem, const GalerkinBasis& basis,
                           const CoefficientVector& c) {
    const std::size_t m = basis.mesh().interior_count();
    const std::size_t nsub = m + 1;
    CoefficientVector g(basis.dimension(), 0.0);

    const auto nv = basis.node_values(c);
    std::vector<double> iota(m);
    for (std::size_t l = 1; l <= m; ++l) iota[l - 1] = problem.impulse(l, nv[l - 1]);

    std::vector<double> fvals;
    for (std::size_t j = 1; j <= nsub; ++j) {
        const auto& t = basis.tables(j);
        const auto u = basis.values_at_quadrature(c, j);
        fvals.resize(u.size());
        for (std::size_t q = 0; q < u.size(); ++q) fvals[q] = problem.f(j, u[q]);

        for (std::size_t k = 1; k <= basis.modes(); ++k) {
            const std::size_t idx = basis.sine_index(j, k);
            g[idx] = c[idx] - kernels::dot3(t.weights, fvals, t.phi.row(k - 1));
        }
        for (std::size_t l = 1; l <= m; ++l)
            g[basis.m_index(l)] -= kernels::dot3(t.weights, fvals, t.wval.row(l - 1));
    }

    const auto& gram = basis.mesh().gram();
    for (std::size_t l = 1; l <= m; ++l) {
        double v = nv[l - 1]; // <u, w_l>
        for (std::size_t p = 0; p < m; ++p) v -= iota[p] * gram(p, l - 1);
        g[basis.m_index(l)] += v;
    }
    return g;
}

linalg::Matrix hessian(const ProblemSpec& problem, const GalerkinBasis& basis,
                       const CoefficientVector& c) {
    const std::size_t m = basis.mesh().interior_count();
    const std::size_t n = basis.modes();
    const std::size_t dim = basis.dimension();
    linalg::Matrix hess(dim, dim);

    // <e, e'> block: identity on sines, G on the M block.
    for (std::size_t j = 1; j <= m + 1; ++j)
        for (std::size_t k = 1; k <= n; ++k) {
            const std::size_t idx = basis.sine_index(j, k);
            hess(idx, idx) = 1.0;
        }
    const auto& gram = basis.mesh().gram();
    for (std::size_t l = 1; l <= m; ++l)
        for (std::size_t p = 1; p <= m; ++p)
            hess(basis.m_index(l), basis.m_index(p)) = gram(l - 1, p - 1);

    std::vector<double> ft, wft;
    for (std::size_t j = 1; j <= m + 1; ++j) {
        const auto& t = basis.tables(j);
        const auto u = basis.values_at_quadrature(c, j);
        ft.resize(u.size());
        for (std::size_t q = 0; q < u.size(); ++q) ft[q] = problem.f_t(j, u[q]);
        wft.resize(u.size());
        kernels::hadamard(t.weights, ft, wft);

        for (std::size_t k = 1; k <= n; ++k) {
            const std::size_t row = basis.sine_index(j, k);
            for (std::size_t k2 = k; k2 <= n; ++k2) {
                const double v = kernels::dot3(wft, t.phi.row(k - 1), t.phi.row(k2 - 1));
                const std::size_t col = basis.sine_index(j, k2);
                hess(row, col) -= v;
                if (row != col) hess(col, row) -= v;
            }
            for (std::size_t l = 1; l <= m; ++l) {
                const double v = kernels::dot3(wft, t.phi.row(k - 1), t.wval.row(l - 1));
                hess(row, basis.m_index(l)) -= v;
                hess(basis.m_index(l), row) -= v;
            }
        }
        for (std::size_t l = 1; l <= m; ++l)
            for (std::size_t p = l; p <= m; ++p) {
                const double v = kernels::dot3(wft, t.wval.row(l - 1), t.wval.row(p - 1));
                hess(basis.m_index(l), basis.m_index(p)) -= v;
                if (l != p) hess(basis.m_index(p), basis.m_index(l)) -= v;
            }
    }

    // Impulse second-order terms touch only the M block: e(x_l) = G_{l.}.
    const auto nv = basis.node_values(c);
    for (std::size_t p = 1; p <= m; ++p) {
        const double slope = problem.impulse_slope(p, nv[p - 1]);
        if (slope == 0.0) continue;
        for (std::size_t l = 1; l <= m; ++l)
            for (std::size_t l2 = 1; l2 <= m; ++l2)
                hess(basis.m_index(l), basis.m_index(l2)) -=
                    slope * gram(p - 1, l - 1) * gram(p - 1, l2 - 1);
    }
    return hess;
}

} // namespace impulsive
