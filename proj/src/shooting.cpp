#include "impulsive/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "impulsive/kernels.hpp"
#include "impulsive/spectral.hpp"

namespace impulsive {

double linear_transfer(const ImpulseMesh& mesh, std::span<const double> b) {
    const std::size_t m = mesh.interior_count();
    if (b.size() != m)
        throw std::invalid_argument("linear_transfer: b must have length m");
    double u = 0.0;
    double slope = 1.0;
    for (std::size_t j = 1; j <= m; ++j) {
        u += slope * mesh.length(j);
        slope -= b[j - 1] * u;
    }
    return u + slope * mesh.length(m + 1);
}

double Trajectory::value_at_node(const ImpulseMesh& mesh, std::size_t l) const {
    const double target = mesh.node(l);
    for (const auto& jr : jumps)
        if (jr.x == target) return jr.u;
    // Fall back to the nearest sample.
    auto it = std::lower_bound(x.begin(), x.end(), target);
    if (it == x.end()) --it;
    return u[static_cast<std::size_t>(it - x.begin())];
}

double ResidualReport::max_jump() const {
    double worst = 0.0;
    for (double r : jump_residuals) worst = std::max(worst, r);
    return worst;
}

double ResidualReport::max_residual() const {
    return std::max({ode_residual, max_jump(), boundary_left, boundary_right,
                     weak_residual});
}

namespace {

// Dormand-Prince 5(4) tableau.
struct Dp45 {
    static constexpr double a21 = 1.0 / 5.0;
    static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                            a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
    static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                            a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                            a65 = -5103.0 / 18656.0;
    static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                            b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
    // b - bhat: coefficients of the embedded error estimate.
    static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0,
                            e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                            e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
    static constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0,
                            c5 = 8.0 / 9.0;
};

struct State {
    double u, v;
};

// One DP45 step for u' = v, v' = -f(x, u) on subinterval j.
State dp45_step(const ProblemSpec& p, std::size_t j, double x, State y, double h,
                double& err_u, double& err_v) {
    using T = Dp45;
    // f has no explicit x-dependence inside a subinterval.
    auto fv = [&](double, double uu) { return -p.f(j, uu); };

    const double k1u = y.v, k1v = fv(x, y.u);
    double uu = y.u + h * T::a21 * k1u;
    double vv = y.v + h * T::a21 * k1v;
    const double k2u = vv, k2v = fv(x + T::c2 * h, uu);

    uu = y.u + h * (T::a31 * k1u + T::a32 * k2u);
    vv = y.v + h * (T::a31 * k1v + T::a32 * k2v);
    const double k3u = vv, k3v = fv(x + T::c3 * h, uu);

    uu = y.u + h * (T::a41 * k1u + T::a42 * k2u + T::a43 * k3u);
    vv = y.v + h * (T::a41 * k1v + T::a42 * k2v + T::a43 * k3v);
    const double k4u = vv, k4v = fv(x + T::c4 * h, uu);

    uu = y.u + h * (T::a51 * k1u + T::a52 * k2u + T::a53 * k3u + T::a54 * k4u);
    vv = y.v + h * (T::a51 * k1v + T::a52 * k2v + T::a53 * k3v + T::a54 * k4v);
    const double k5u = vv, k5v = fv(x + T::c5 * h, uu);

    uu = y.u + h * (T::a61 * k1u + T::a62 * k2u + T::a63 * k3u + T::a64 * k4u +
                    T::a65 * k5u);
    vv = y.v + h * (T::a61 * k1v + T::a62 * k2v + T::a63 * k3v + T::a64 * k4v +
                    T::a65 * k5v);
    const double k6u = vv, k6v = fv(x + h, uu);

    State out;
    out.u = y.u + h * (T::b1 * k1u + T::b3 * k3u + T::b4 * k4u + T::b5 * k5u +
                       T::b6 * k6u);
    out.v = y.v + h * (T::b1 * k1v + T::b3 * k3v + T::b4 * k4v + T::b5 * k5v +
                       T::b6 * k6v);

    const double k7u = out.v, k7v = fv(x + h, out.u);
    err_u = h * (T::e1 * k1u + T::e3 * k3u + T::e4 * k4u + T::e5 * k5u + T::e6 * k6u +
                 T::e7 * k7u);
    err_v = h * (T::e1 * k1v + T::e3 * k3v + T::e4 * k4v + T::e5 * k5v + T::e6 * k6v +
                 T::e7 * k7v);
    return out;
}

// Integrates subinterval j from x_lo to x_hi, forcing every target in
// `targets` (ascending, within (x_lo, x_hi]) to be a step boundary.
template <typename Rec>
void integrate_adaptive(const ProblemSpec& p, std::size_t j, double x_lo, double x_hi,
                        State& y, double tol, std::span<const double> targets,
                        bool record_steps, Rec&& rec) {
    const double len = x_hi - x_lo;
    double x = x_lo;
    double h_prop = len / 16.0;
    std::size_t ti = 0;
    const double floor = 1e-14 * std::max(1.0, len);
    std::size_t hard_cap = 50'000'000;

    while (x < x_hi) {
        while (ti < targets.size() && targets[ti] <= x + floor) ++ti;
        const double limit = ti < targets.size() ? std::min(targets[ti], x_hi) : x_hi;
        double h = std::min(h_prop, limit - x);
        if (h < floor) {
            // Snap across representable-gap residue.
            if (limit - x < floor) {
                x = limit;
                continue;
            }
            throw ShootError("integrator step-size underflow at x = " + std::to_string(x), x);
        }
        if (hard_cap-- == 0)
            throw ShootError("integrator step budget exhausted at x = " + std::to_string(x), x);

        double eu = 0.0, ev = 0.0;
        const State ynew = dp45_step(p, j, x, y, h, eu, ev);
        const double sc_u = tol + tol * std::max(std::abs(y.u), std::abs(ynew.u));
        const double sc_v = tol + tol * std::max(std::abs(y.v), std::abs(ynew.v));
        double err = std::max(std::abs(eu) / sc_u, std::abs(ev) / sc_v);
        if (!std::isfinite(err) || !std::isfinite(ynew.u) || !std::isfinite(ynew.v))
            err = std::numeric_limits<double>::infinity();

        if (err <= 1.0) {
            x += h;
            if (limit - x < floor) x = limit; // land exactly on forced points
            y = ynew;
            const bool on_target = ti < targets.size() && x == targets[ti];
            if (record_steps || on_target) rec(x, y.u, y.v);
            if (on_target) ++ti;
            const double grow = err == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(err, -0.2));
            h_prop = h * std::max(1.0, grow);
        } else {
            h_prop = h * std::max(0.2, std::min(0.9, 0.9 * std::pow(err, -0.2)));
        }
    }
}

template <typename Rec>
void integrate_fixed(const ProblemSpec& p, std::size_t j, double x_lo, double x_hi,
                     State& y, std::size_t steps, Rec&& rec) {
    const double h = (x_hi - x_lo) / static_cast<double>(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        const double x = x_lo + static_cast<double>(i) * h;
        double eu, ev;
        y = dp45_step(p, j, x, y, h, eu, ev);
        rec(i + 1 == steps ? x_hi : x + h, y.u, y.v);
    }
}

enum class Mode { AdaptiveSteps, AdaptiveTargets, Fixed };

Trajectory shoot_core(const ProblemSpec& p, double slope, double tol,
                      std::span<const double> sample_x, Mode mode,
                      std::size_t fixed_steps) {
    const ImpulseMesh& mesh = p.mesh;
    const std::size_t m = mesh.interior_count();

    Trajectory traj;
    traj.initial_slope = slope;
    State y{0.0, slope};
    traj.x.push_back(0.0);
    traj.u.push_back(0.0);
    traj.du.push_back(slope);

    auto rec = [&](double x, double u, double v) {
        if (!traj.x.empty() && traj.x.back() == x) {
            traj.u.back() = u;
            traj.du.back() = v;
            return;
        }
        traj.x.push_back(x);
        traj.u.push_back(u);
        traj.du.push_back(v);
    };

    std::size_t si = 0; // cursor into sample_x
    for (std::size_t j = 1; j <= m + 1; ++j) {
        const double x_lo = mesh.boundary_node(j - 1);
        const double x_hi = mesh.boundary_node(j);

        if (mode == Mode::Fixed) {
            integrate_fixed(p, j, x_lo, x_hi, y, fixed_steps, rec);
        } else {
            std::vector<double> targets;
            if (mode == Mode::AdaptiveTargets) {
                while (si < sample_x.size() && sample_x[si] <= x_lo) ++si;
                for (std::size_t k = si; k < sample_x.size() && sample_x[k] < x_hi; ++k)
                    targets.push_back(sample_x[k]);
            }
            targets.push_back(x_hi);
            integrate_adaptive(p, j, x_lo, x_hi, y, tol, targets,
                               mode == Mode::AdaptiveSteps, rec);
        }
        rec(x_hi, y.u, y.v);

        if (j <= m) {
            JumpRecord jr;
            jr.x = x_hi;
            jr.u = y.u;
            jr.slope_before = y.v;
            y.v -= p.impulse(j, y.u); // exact algebraic slope drop
            jr.slope_after = y.v;
            traj.jumps.push_back(jr);
        }
    }
    traj.terminal_value = y.u;
    traj.terminal_slope = y.v;
    return traj;
}

} // namespace

Trajectory shoot(const ProblemSpec& problem, double initial_slope, double integrator_tol) {
    if (!(integrator_tol > 0.0))
        throw std::invalid_argument("shoot: integrator tolerance must be > 0");
    return shoot_core(problem, initial_slope, integrator_tol, {}, Mode::AdaptiveSteps, 0);
}

Trajectory shoot_sampled(const ProblemSpec& problem, double initial_slope,
                         double integrator_tol, std::span<const double> sample_x) {
    if (!(integrator_tol > 0.0))
        throw std::invalid_argument("shoot: integrator tolerance must be > 0");
    return shoot_core(problem, initial_slope, integrator_tol, sample_x,
                      Mode::AdaptiveTargets, 0);
}

Trajectory shoot_fixed(const ProblemSpec& problem, double initial_slope,
                       std::size_t steps_per_subinterval) {
    if (steps_per_subinterval == 0)
        throw std::invalid_argument("shoot_fixed: need at least one step");
    return shoot_core(problem, initial_slope, 0.0, {}, Mode::Fixed, steps_per_subinterval);
}

std::vector<Trajectory> bisect_solutions(const ProblemSpec& problem, double slope_lo,
                                         double slope_hi, std::size_t grid, double tol,
                                         double integrator_tol) {
    if (grid < 2) throw std::invalid_argument("bisect_solutions: grid must be >= 2");
    if (!(tol > 0.0)) throw std::invalid_argument("bisect_solutions: tol must be > 0");

    auto terminal = [&](double s) -> double {
        return shoot(problem, s, integrator_tol).terminal_value;
    };

    std::vector<double> s(grid), g(grid);
    std::vector<bool> ok(grid, true);
    for (std::size_t i = 0; i < grid; ++i) {
        s[i] = slope_lo + (slope_hi - slope_lo) * static_cast<double>(i) /
                              static_cast<double>(grid - 1);
        try {
            g[i] = terminal(s[i]);
        } catch (const ShootError&) {
            ok[i] = false; // blow-up at this slope; scan continues around it
        }
    }

    std::vector<double> roots;
    for (std::size_t i = 0; i < grid; ++i)
        if (ok[i] && g[i] == 0.0) roots.push_back(s[i]);

    for (std::size_t i = 0; i + 1 < grid; ++i) {
        if (!ok[i] || !ok[i + 1]) continue;
        if (!(g[i] * g[i + 1] < 0.0)) continue;
        double lo = s[i], hi = s[i + 1], glo = g[i];
        while (hi - lo > tol) {
            const double mid = 0.5 * (lo + hi);
            double gm;
            try {
                gm = terminal(mid);
            } catch (const ShootError&) {
                break;
            }
            if (gm == 0.0) {
                lo = hi = mid;
                break;
            }
            if (glo * gm < 0.0) {
                hi = mid;
            } else {
                lo = mid;
                glo = gm;
            }
        }
        roots.push_back(0.5 * (lo + hi));
    }

    std::sort(roots.begin(), roots.end());
    std::vector<double> merged;
    for (double r : roots) {
        if (!merged.empty() && r - merged.back() < 10.0 * tol) continue;
        merged.push_back(r);
    }

    std::vector<Trajectory> out;
    out.reserve(merged.size());
    for (double r : merged) out.push_back(shoot(problem, r, integrator_tol));
    return out;
}

// ---------------------------------------------------------------------------
// Residual verification
// ---------------------------------------------------------------------------

namespace {

constexpr std::size_t kOdeGridPoints = 2048;
constexpr std::size_t kWeakTestModes = 16;

// Candidate solutions expose values everywhere and one-sided slopes at nodes.
class Candidate {
public:
    virtual ~Candidate() = default;
    virtual double value(double x) const = 0;
    virtual double slope_left(std::size_t node) const = 0;
    virtual double slope_right(std::size_t node) const = 0;
};

class CoefficientCandidate final : public Candidate {
public:
    CoefficientCandidate(const GalerkinBasis& basis, const CoefficientVector& c)
        : basis_(basis), c_(c) {}
    double value(double x) const override { return basis_.eval(c_, x); }
    double slope_left(std::size_t node) const override {
        return basis_.eval_derivative(c_, basis_.mesh().node(node),
                                      GalerkinBasis::Side::Left);
    }
    double slope_right(std::size_t node) const override {
        return basis_.eval_derivative(c_, basis_.mesh().node(node),
                                      GalerkinBasis::Side::Right);
    }

private:
    const GalerkinBasis& basis_;
    const CoefficientVector& c_;
};

// Local Newton interpolation over the samples of one subinterval.
class SampledCandidate : public Candidate {
public:
    SampledCandidate(const ImpulseMesh& mesh, std::span<const double> xs,
                     std::span<const double> us)
        : mesh_(mesh), xs_(xs.begin(), xs.end()), us_(us.begin(), us.end()) {
        if (xs_.size() != us_.size() || xs_.size() < 2)
            throw std::invalid_argument("sampled candidate: need matching x/u samples");
        if (!std::is_sorted(xs_.begin(), xs_.end()))
            throw std::invalid_argument("sampled candidate: x samples must be ascending");
        if (xs_.front() > 1e-12 || xs_.back() < 1.0 - 1e-12)
            throw std::invalid_argument("sampled candidate: samples must cover [0, 1]");
    }

    double value(double x) const override {
        double v, dv;
        interpolate(subinterval_of(x), x, v, dv);
        return v;
    }
    double slope_left(std::size_t node) const override {
        double v, dv;
        interpolate(node, mesh_.node(node), v, dv);
        return dv;
    }
    double slope_right(std::size_t node) const override {
        double v, dv;
        interpolate(node + 1, mesh_.node(node), v, dv);
        return dv;
    }

private:
    std::size_t subinterval_of(double x) const {
        std::size_t j = 1;
        while (j <= mesh_.interior_count() && x > mesh_.node(j)) ++j;
        return j;
    }

    void interpolate(std::size_t j, double x, double& value, double& deriv) const {
        const double left = mesh_.boundary_node(j - 1);
        const double right = mesh_.boundary_node(j);
        const double pad = 1e-12;
        const auto lo = std::lower_bound(xs_.begin(), xs_.end(), left - pad);
        const auto hi = std::upper_bound(xs_.begin(), xs_.end(), right + pad);
        const std::size_t first = static_cast<std::size_t>(lo - xs_.begin());
        const std::size_t count = static_cast<std::size_t>(hi - lo);
        if (count < 2)
            throw std::invalid_argument("sampled candidate: fewer than 2 samples in subinterval " +
                                        std::to_string(j));

        const std::size_t window = std::min<std::size_t>(6, count);
        // Center the window on x.
        std::size_t pos = static_cast<std::size_t>(
            std::lower_bound(xs_.begin() + first, xs_.begin() + first + count, x) -
            (xs_.begin() + first));
        std::size_t start = pos > window / 2 ? pos - window / 2 : 0;
        start = std::min(start, count - window);

        double nx[6], coef[6];
        for (std::size_t i = 0; i < window; ++i) {
            nx[i] = xs_[first + start + i];
            coef[i] = us_[first + start + i];
        }
        for (std::size_t lvl = 1; lvl < window; ++lvl)
            for (std::size_t i = window - 1; i >= lvl; --i)
                coef[i] = (coef[i] - coef[i - 1]) / (nx[i] - nx[i - lvl]);

        double p = coef[window - 1], dp = 0.0;
        for (std::size_t i = window - 1; i-- > 0;) {
            dp = p + (x - nx[i]) * dp;
            p = coef[i] + (x - nx[i]) * p;
        }
        value = p;
        deriv = dp;
    }

    const ImpulseMesh& mesh_;
    std::vector<double> xs_, us_;
};

// Trajectory samples with the exact recorded one-sided slopes.
class TrajectoryCandidate final : public SampledCandidate {
public:
    TrajectoryCandidate(const ImpulseMesh& mesh, const Trajectory& t)
        : SampledCandidate(mesh, t.x, t.u), jumps_(t.jumps) {}
    double slope_left(std::size_t node) const override {
        return jumps_.at(node - 1).slope_before;
    }
    double slope_right(std::size_t node) const override {
        return jumps_.at(node - 1).slope_after;
    }

private:
    std::vector<JumpRecord> jumps_;
};

std::vector<double> uniform_closed_grid(double a, double b, std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    g.front() = a;
    g.back() = b;
    return g;
}

// Stride-adaptive 5-point second-difference residual: each stride is a
// consistent estimator of max |-u'' - f|; wider strides trade truncation for
// a lower rounding floor, so the smallest max is reported.
double ode_residual_on_values(const ProblemSpec& p, std::size_t j,
                              std::span<const double> xs, std::span<const double> us) {
    const double h = xs[1] - xs[0];
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t stride : {std::size_t{1}, std::size_t{4}, std::size_t{16}}) {
        const std::size_t margin = std::max<std::size_t>(2 * stride, 2);
        if (xs.size() < 2 * margin + 4) continue;
        const double denom = 12.0 * (h * static_cast<double>(stride)) *
                             (h * static_cast<double>(stride));
        double worst = 0.0;
        for (std::size_t i = margin; i + margin < xs.size(); ++i) {
            const double upp = (-us[i - 2 * stride] + 16.0 * us[i - stride] -
                                30.0 * us[i] + 16.0 * us[i + stride] -
                                us[i + 2 * stride]) /
                               denom;
            worst = std::max(worst, std::abs(-upp - p.f(j, us[i])));
        }
        best = std::min(best, worst);
    }
    return std::isfinite(best) ? best : 0.0;
}

ResidualReport residuals_for(const ProblemSpec& p, const Candidate& cand,
                             std::size_t test_quad_order,
                             const std::vector<std::vector<double>>* precomputed_grids,
                             const std::vector<std::vector<double>>* precomputed_values) {
    const ImpulseMesh& mesh = p.mesh;
    const std::size_t m = mesh.interior_count();
    ResidualReport report;

    report.boundary_left = std::abs(cand.value(0.0));
    report.boundary_right = std::abs(cand.value(1.0));

    report.jump_residuals.resize(m);
    std::vector<double> node_vals(m);
    for (std::size_t l = 1; l <= m; ++l) {
        node_vals[l - 1] = cand.value(mesh.node(l));
        const double jump = cand.slope_right(l) - cand.slope_left(l);
        report.jump_residuals[l - 1] = std::abs(jump + p.impulse(l, node_vals[l - 1]));
    }

    for (std::size_t j = 1; j <= m + 1; ++j) {
        std::vector<double> xs, us;
        if (precomputed_grids) {
            xs = (*precomputed_grids)[j - 1];
            us = (*precomputed_values)[j - 1];
        } else {
            xs = uniform_closed_grid(mesh.boundary_node(j - 1), mesh.boundary_node(j),
                                     kOdeGridPoints);
            us.resize(xs.size());
            for (std::size_t i = 0; i < xs.size(); ++i) us[i] = cand.value(xs[i]);
        }
        report.ode_residual =
            std::max(report.ode_residual, ode_residual_on_values(p, j, xs, us));
    }

    // Weak-form defect against the 16-mode test basis plus the representers.
    const GalerkinBasis test(mesh, kWeakTestModes, test_quad_order);
    std::vector<double> wl_defect(m);
    for (std::size_t l = 1; l <= m; ++l) {
        double v = node_vals[l - 1]; // <u, w_l> by the representer property
        for (std::size_t pnode = 1; pnode <= m; ++pnode)
            v -= p.impulse(pnode, node_vals[pnode - 1]) * mesh.gram()(pnode - 1, l - 1);
        wl_defect[l - 1] = v;
    }

    double weak = 0.0;
    std::vector<double> uq, fq;
    for (std::size_t j = 1; j <= m + 1; ++j) {
        const auto& t = test.tables(j);
        const double len = mesh.length(j);
        const double u_left = j == 1 ? cand.value(0.0) : node_vals[j - 2];
        const double u_right = j == m + 1 ? cand.value(1.0) : node_vals[j - 1];

        uq.resize(t.nodes.size());
        fq.resize(t.nodes.size());
        for (std::size_t q = 0; q < t.nodes.size(); ++q) {
            uq[q] = cand.value(t.nodes[q]);
            fq[q] = p.f(j, uq[q]);
        }

        const double dphi_end = std::sqrt(2.0 / len);
        for (std::size_t k = 1; k <= kWeakTestModes; ++k) {
            const double lam = subinterval_eigenvalue(mesh, j, k);
            const double sgn = k % 2 == 0 ? 1.0 : -1.0;
            // <u, phi> = [u phi']_left^right + lambda int u phi.
            const double ip = u_right * sgn * dphi_end - u_left * dphi_end +
                              lam * kernels::dot3(t.weights, uq, t.phi.row(k - 1));
            const double defect = ip - kernels::dot3(t.weights, fq, t.phi.row(k - 1));
            weak = std::max(weak, std::abs(defect));
        }
        for (std::size_t l = 1; l <= m; ++l)
            wl_defect[l - 1] -= kernels::dot3(t.weights, fq, t.wval.row(l - 1));
    }
    for (double d : wl_defect) weak = std::max(weak, std::abs(d));
    report.weak_residual = weak;
    return report;
}

} // namespace

ResidualReport verify_solution(const ProblemSpec& problem, const GalerkinBasis& basis,
                               const CoefficientVector& c) {
    CoefficientCandidate cand(basis, c);
    const std::size_t quad = std::max<std::size_t>(2 * kWeakTestModes + 10,
                                                   2 * basis.modes() + 10);
    return residuals_for(problem, cand, quad, nullptr, nullptr);
}

ResidualReport verify_solution(const ProblemSpec& problem, const SampledFunction& s) {
    SampledCandidate cand(problem.mesh, s.x, s.u);
    return residuals_for(problem, cand, 2 * kWeakTestModes + 10, nullptr, nullptr);
}

ShootVerification verify_by_shooting(const ProblemSpec& problem, double initial_slope,
                                     double integrator_tol) {
    const ImpulseMesh& mesh = problem.mesh;
    const std::size_t m = mesh.interior_count();

    // Force the differencing grids to be exact integrator samples.
    std::vector<std::vector<double>> grids(m + 1);
    std::vector<double> all;
    for (std::size_t j = 1; j <= m + 1; ++j) {
        grids[j - 1] = uniform_closed_grid(mesh.boundary_node(j - 1),
                                           mesh.boundary_node(j), kOdeGridPoints);
        all.insert(all.end(), grids[j - 1].begin(), grids[j - 1].end());
    }
    all.erase(std::unique(all.begin(), all.end()), all.end());

    ShootVerification out;
    out.trajectory = shoot_sampled(problem, initial_slope, integrator_tol, all);

    std::vector<std::vector<double>> values(m + 1);
    {
        std::size_t cursor = 0;
        for (std::size_t j = 0; j <= m; ++j) {
            values[j].resize(grids[j].size());
            for (std::size_t i = 0; i < grids[j].size(); ++i) {
                while (cursor < out.trajectory.x.size() &&
                       out.trajectory.x[cursor] < grids[j][i])
                    ++cursor;
                values[j][i] = out.trajectory.u[cursor];
            }
            cursor = 0; // grids share their node endpoints; rescan is cheap
        }
    }

    TrajectoryCandidate cand(mesh, out.trajectory);
    out.residuals = residuals_for(problem, cand, 2 * kWeakTestModes + 10, &grids, &values);
    return out;
}

} // namespace impulsive
