#include "impulsive/problem.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace impulsive {

namespace {

NonlinearityEntry make_none() {
    NonlinearityEntry e;
    e.name = "none";
    e.fn.value = [](double) { return 0.0; };
    e.fn.derivative = [](double) { return 0.0; };
    e.fn.primitive = [](double) { return 0.0; };
    e.kind = GrowthKind::None;
    return e;
}

// (t^3 + t^2)/(t^2 + 1) - t simplifies to (t^2 - t)/(t^2 + 1); its primitive
// is t - atan t - log(1 + t^2)/2. Bounded by ~1.21, slope -1 at zero.
NonlinearityEntry make_rational_cubic() {
    NonlinearityEntry e;
    e.name = "rational_cubic";
    e.fn.value = [](double t) { return (t * t - t) / (t * t + 1.0); };
    e.fn.derivative = [](double t) {
        const double q = t * t + 1.0;
        return (t * t + 2.0 * t - 1.0) / (q * q);
    };
    e.fn.primitive = [](double t) {
        return t - std::atan(t) - 0.5 * std::log1p(t * t);
    };
    e.kind = GrowthKind::Sublinear;
    e.growth_r = 1.5;
    e.growth_C = 1.3;
    e.slope_at_zero = -1.0;
    return e;
}

NonlinearityEntry make_cubic() {
    NonlinearityEntry e;
    e.name = "cubic";
    e.fn.value = [](double t) { return t * t * t; };
    e.fn.derivative = [](double t) { return 3.0 * t * t; };
    e.fn.primitive = [](double t) { return 0.25 * t * t * t * t; };
    e.kind = GrowthKind::Superlinear;
    e.growth_mu = 4.0;
    e.growth_c = 1.0;
    e.growth_C = 0.0;
    e.slope_at_zero = 0.0;
    return e;
}

NonlinearityEntry make_cubic_plus_square() {
    NonlinearityEntry e;
    e.name = "cubic_plus_square";
    e.fn.value = [](double t) { return t * t * t + t * t; };
    e.fn.derivative = [](double t) { return 3.0 * t * t + 2.0 * t; };
    e.fn.primitive = [](double t) { return 0.25 * t * t * t * t + t * t * t / 3.0; };
    e.kind = GrowthKind::Superlinear;
    e.growth_mu = 4.0;
    // t^4 + t^3 >= 0.5 t^4 - 1 for all t (min of 0.5 t^4 + t^3 + 1 is ~0.15).
    e.growth_c = 0.5;
    e.growth_C = 1.0;
    e.slope_at_zero = 0.0;
    return e;
}

NonlinearityEntry make_bounded_atan() {
    NonlinearityEntry e;
    e.name = "bounded_atan";
    e.fn.value = [](double t) { return std::atan(t); };
    e.fn.derivative = [](double t) { return 1.0 / (1.0 + t * t); };
    e.fn.primitive = [](double t) {
        return t * std::atan(t) - 0.5 * std::log1p(t * t);
    };
    e.kind = GrowthKind::Sublinear;
    e.growth_r = 1.5;
    e.growth_C = 1.6;
    e.slope_at_zero = 1.0;
    return e;
}

const std::map<std::string, NonlinearityEntry>& catalog() {
    static const std::map<std::string, NonlinearityEntry> entries = [] {
        std::map<std::string, NonlinearityEntry> m;
        for (auto e : {make_none(), make_rational_cubic(), make_cubic(),
                       make_cubic_plus_square(), make_bounded_atan()})
            m.emplace(e.name, std::move(e));
        return m;
    }();
    return entries;
}

} // namespace

const NonlinearityEntry& catalog_entry(const std::string& name) {
    const auto& entries = catalog();
    auto it = entries.find(name);
    if (it == entries.end()) {
        std::string msg = "unknown nonlinearity \"" + name + "\"; available:";
        for (const auto& [n, _] : entries) msg += " " + n;
        throw std::invalid_argument(msg);
    }
    return it->second;
}

std::vector<std::string> catalog_names() {
    std::vector<std::string> names;
    for (const auto& [n, _] : catalog()) names.push_back(n);
    return names;
}

bool sample_sublinear_bound(const NonlinearityEntry& e, double lo, double hi,
                            std::size_t grid) {
    if (e.is_none()) return true;
    if (e.kind != GrowthKind::Sublinear) return false;
    if (!(e.growth_r > 1.0 && e.growth_r < 2.0) || !(e.growth_C > 0.0)) return false;
    for (std::size_t i = 0; i < grid; ++i) {
        const double t = lo + (hi - lo) * static_cast<double>(i) /
                                  static_cast<double>(grid - 1);
        const double bound =
            e.growth_C * (std::pow(std::abs(t), e.growth_r - 1.0) + 1.0);
        if (std::abs(e.fn.value(t)) > bound * (1.0 + 1e-9) + 1e-12) return false;
    }
    return true;
}

bool sample_superlinear_bound(const NonlinearityEntry& e, double lo, double hi,
                              std::size_t grid) {
    if (e.is_none()) return true;
    if (e.kind != GrowthKind::Superlinear) return false;
    if (!(e.growth_mu > 2.0) || !(e.growth_c > 0.0)) return false;
    for (std::size_t i = 0; i < grid; ++i) {
        const double t = lo + (hi - lo) * static_cast<double>(i) /
                                  static_cast<double>(grid - 1);
        const double lower =
            e.growth_c * std::pow(std::abs(t), e.growth_mu) - e.growth_C;
        if (t * e.fn.value(t) < lower - 1e-9 * (1.0 + std::abs(lower))) return false;
    }
    return true;
}

double max_derivative_mismatch(const NonlinearityEntry& e, double lo, double hi,
                               std::size_t grid) {
    double worst = 0.0;
    const double eps = 1e-6;
    for (std::size_t i = 0; i < grid; ++i) {
        const double t = lo + (hi - lo) * static_cast<double>(i) /
                                  static_cast<double>(grid - 1);
        const double fd = (e.fn.value(t + eps) - e.fn.value(t - eps)) / (2.0 * eps);
        const double d = e.fn.derivative(t);
        worst = std::max(worst, std::abs(fd - d) / (1.0 + std::abs(d)));
    }
    return worst;
}

double ProblemSpec::g_scale(std::size_t j) const {
    return g.scale * (g.scale_by_a ? a.at(j - 1) : 1.0);
}

double ProblemSpec::f(std::size_t j, double t) const {
    double v = a.at(j - 1) * t;
    if (!g.entry.is_none()) v += g_scale(j) * g.entry.fn.value(t);
    return v;
}

double ProblemSpec::f_t(std::size_t j, double t) const {
    double v = a.at(j - 1);
    if (!g.entry.is_none()) v += g_scale(j) * g.entry.fn.derivative(t);
    return v;
}

double ProblemSpec::F(std::size_t j, double t) const {
    double v = 0.5 * a.at(j - 1) * t * t;
    if (!g.entry.is_none()) v += g_scale(j) * g.entry.fn.primitive(t);
    return v;
}

double ProblemSpec::impulse(std::size_t l, double t) const {
    double v = b.at(l - 1) * t;
    if (!h.at(l - 1).is_none()) v += h[l - 1].fn.value(t);
    return v;
}

double ProblemSpec::impulse_slope(std::size_t l, double t) const {
    double v = b.at(l - 1);
    if (!h.at(l - 1).is_none()) v += h[l - 1].fn.derivative(t);
    return v;
}

double ProblemSpec::impulse_primitive(std::size_t l, double t) const {
    double v = 0.5 * b.at(l - 1) * t * t;
    if (!h.at(l - 1).is_none()) v += h[l - 1].fn.primitive(t);
    return v;
}

bool ProblemSpec::zero_is_critical(double tol) const {
    for (std::size_t j = 1; j <= a.size(); ++j)
        if (std::abs(f(j, 0.0)) > tol) return false;
    for (std::size_t l = 1; l <= b.size(); ++l)
        if (std::abs(impulse(l, 0.0)) > tol) return false;
    return true;
}

ProblemSpec make_problem(ImpulseMesh mesh, std::vector<double> a, std::vector<double> b,
                         GTerm g, std::vector<NonlinearityEntry> h) {
    const std::size_t m = mesh.interior_count();
    if (a.size() != m + 1)
        throw std::invalid_argument("problem: a must have length m + 1 = " +
                                    std::to_string(m + 1));
    if (b.size() != m)
        throw std::invalid_argument("problem: b must have length m = " + std::to_string(m));
    if (h.empty()) h.assign(m, catalog_entry("none"));
    if (h.size() != m)
        throw std::invalid_argument("problem: h must have length m = " + std::to_string(m));
    if (!g.entry.fn.value) g.entry = catalog_entry("none");
    return ProblemSpec{std::move(mesh), std::move(a), std::move(b), std::move(g),
                       std::move(h)};
}

ProblemSpec linear_problem(ImpulseMesh mesh, std::vector<double> a, std::vector<double> b) {
    return make_problem(std::move(mesh), std::move(a), std::move(b));
}

} // namespace impulsive
