#include "impulsive/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "impulsive/parallel.hpp"
#include "impulsive/spectral.hpp"

namespace impulsive {

namespace {

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double distance2(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

struct NewtonResult {
    CoefficientVector x;
    double gradient_norm = 0.0;
    bool converged = false;
};

// Damped Newton on the gradient. A step must reduce |grad|; when Newton
// backtracking stalls, falls back to descent on psi = |grad|^2 / 2 whose
// gradient is H g.
NewtonResult newton_core(const ProblemSpec& problem, const GalerkinBasis& basis,
                         CoefficientVector x, const SolverOptions& opts) {
    NewtonResult res;
    double trust = opts.trust_radius_init;

    CoefficientVector g = gradient(problem, basis, x);
    double gn = norm2(g);

    for (std::size_t iter = 0; iter < opts.max_iters && gn > opts.gradient_tol; ++iter) {
        linalg::Matrix hess = hessian(problem, basis, x);

        std::vector<double> step(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) step[i] = -g[i];
        if (!linalg::lu_solve(hess, step, 1e-10)) {
            // Near-singular Hessian: shift by 1e-8 * scale for this step only.
            const double shift = 1e-8 * (1.0 + hess.max_abs());
            linalg::Matrix shifted = hess;
            for (std::size_t i = 0; i < shifted.rows(); ++i) shifted(i, i) += shift;
            for (std::size_t i = 0; i < g.size(); ++i) step[i] = -g[i];
            if (!linalg::lu_solve(shifted, step, 1e-13))
                for (std::size_t i = 0; i < g.size(); ++i) step[i] = -g[i];
        }

        const double sn = norm2(step);
        if (sn > trust)
            for (double& s : step) s *= trust / sn;

        bool accepted = false;
        double alpha = 1.0;
        CoefficientVector xn(x.size());
        for (int bt = 0; bt < 25; ++bt) {
            for (std::size_t i = 0; i < x.size(); ++i) xn[i] = x[i] + alpha * step[i];
            CoefficientVector g2 = gradient(problem, basis, xn);
            const double gn2 = norm2(g2);
            if (gn2 < gn * (1.0 - 1e-4 * alpha) || gn2 <= opts.gradient_tol) {
                x = xn;
                g = std::move(g2);
                gn = gn2;
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }

        if (accepted) {
            trust = std::min(trust * 2.0, 1e6);
            continue;
        }

        // Least-squares fallback: descent direction -H g for psi = |g|^2/2.
        std::vector<double> d = linalg::matvec(hess, g);
        const double dn = norm2(d);
        if (dn > 0.0) {
            const double scale = std::min(trust, 1.0) / dn;
            for (double& v : d) v *= -scale;
            double beta = 1.0;
            bool improved = false;
            for (int bt = 0; bt < 40; ++bt) {
                for (std::size_t i = 0; i < x.size(); ++i) xn[i] = x[i] + beta * d[i];
                CoefficientVector g2 = gradient(problem, basis, xn);
                const double gn2 = norm2(g2);
                if (gn2 < gn * (1.0 - 1e-6 * beta)) {
                    x = xn;
                    g = std::move(g2);
                    gn = gn2;
                    improved = true;
                    break;
                }
                beta *= 0.5;
            }
            if (improved) continue;
        }

        trust *= 0.25;
        if (trust < 1e-14) break;
    }

    res.x = std::move(x);
    res.gradient_norm = gn;
    res.converged = gn <= opts.gradient_tol;
    return res;
}

CriticalPoint finish_point(const ProblemSpec& problem, const GalerkinBasis& basis,
                           NewtonResult&& nr, const SolverOptions& opts, bool verify) {
    CriticalPoint cp;
    cp.coeffs = std::move(nr.x);
    cp.basis_modes = basis.modes();
    cp.basis_quad_order = basis.quad_order();
    cp.gradient_norm = nr.gradient_norm;
    cp.converged = nr.converged;
    cp.energy = energy(problem, basis, cp.coeffs);
    cp.node_values = basis.node_values(cp.coeffs);
    cp.trivial = std::sqrt(basis.h_norm_sq(cp.coeffs)) <= opts.dedup_distance;
    cp.initial_slope = basis.eval_derivative(cp.coeffs, 0.0, GalerkinBasis::Side::Right);

    const linalg::Matrix hess = hessian(problem, basis, cp.coeffs);
    cp.inertia = linalg::sym_inertia(hess, 1e-10 * (1.0 + hess.max_abs()));

    if (!verify) return cp;

    try {
        // Slope polish on the shooting map, seeded at the candidate's slope.
        double s = cp.trivial && problem.zero_is_critical() ? 0.0 : cp.initial_slope;
        const double guard = std::max(0.5, 0.1 * (1.0 + std::abs(s)));
        double best_s = s;
        double best_miss = std::abs(shoot(problem, s, opts.integrator_tol).terminal_value);
        for (int iter = 0; iter < 60 && best_miss > 1e-13; ++iter) {
            const double delta = 1e-7 * (1.0 + std::abs(s));
            const double gp = shoot(problem, s + delta, opts.integrator_tol).terminal_value;
            const double gm = shoot(problem, s - delta, opts.integrator_tol).terminal_value;
            const double dg = (gp - gm) / (2.0 * delta);
            if (dg == 0.0) break;
            const double g0 = shoot(problem, s, opts.integrator_tol).terminal_value;
            double snew = s - g0 / dg;
            if (std::abs(snew - cp.initial_slope) > guard) break; // ran off to another root
            s = snew;
            const double m2 = std::abs(shoot(problem, s, opts.integrator_tol).terminal_value);
            if (m2 < best_miss) {
                best_miss = m2;
                best_s = s;
            } else if (m2 > best_miss * 4.0) {
                break;
            }
        }
        cp.witness_slope = best_s;

        auto sv = verify_by_shooting(problem, best_s, opts.integrator_tol);
        cp.verification = sv.residuals;
        cp.witness_node_distance = 0.0;
        for (std::size_t l = 1; l <= problem.node_count(); ++l)
            cp.witness_node_distance =
                std::max(cp.witness_node_distance,
                         std::abs(cp.node_values[l - 1] -
                                  sv.trajectory.value_at_node(problem.mesh, l)));

        // The weak residual is the candidate's own defect, not the trajectory's.
        cp.verification.weak_residual =
            verify_solution(problem, basis, cp.coeffs).weak_residual;
    } catch (const ShootError&) {
        // Blow-up along the witness reconstruction: report the point as
        // unverifiable rather than aborting the whole search.
        const double inf = std::numeric_limits<double>::infinity();
        cp.witness_slope = cp.initial_slope;
        cp.verification = ResidualReport{};
        cp.verification.ode_residual = inf;
        cp.verification.jump_residuals.assign(problem.node_count(), inf);
        cp.verification.boundary_right = inf;
        cp.verification.weak_residual = inf;
        cp.witness_node_distance = inf;
    }
    return cp;
}

// Coordinate order for seeding: impulse-carrying directions (M block) first,
// then sine modes below their subinterval slope, then the rest.
std::vector<std::size_t> seed_coordinate_order(const ProblemSpec& problem,
                                               const GalerkinBasis& basis) {
    const auto spectral = spectral_report(problem.mesh, problem.a);
    std::vector<std::size_t> first, middle, rest;
    for (std::size_t l = 1; l <= problem.node_count(); ++l)
        first.push_back(basis.m_index(l));
    for (std::size_t j = 1; j <= problem.node_count() + 1; ++j) {
        const auto& sub = spectral.subintervals[j - 1];
        for (std::size_t k = 1; k <= basis.modes(); ++k) {
            const bool lower = !sub.below_first && static_cast<int>(k) <= sub.d;
            (lower ? middle : rest).push_back(basis.sine_index(j, k));
        }
    }
    first.insert(first.end(), middle.begin(), middle.end());
    first.insert(first.end(), rest.begin(), rest.end());
    return first;
}

} // namespace

CoefficientVector embed_coefficients(const GalerkinBasis& from, const GalerkinBasis& to,
                                     const CoefficientVector& c) {
    if (to.modes() < from.modes())
        throw std::invalid_argument("embed_coefficients: target basis is coarser");
    CoefficientVector out(to.dimension(), 0.0);
    const std::size_t m = from.mesh().interior_count();
    for (std::size_t j = 1; j <= m + 1; ++j)
        for (std::size_t k = 1; k <= from.modes(); ++k)
            out[to.sine_index(j, k)] = c[from.sine_index(j, k)];
    for (std::size_t l = 1; l <= m; ++l) out[to.m_index(l)] = c[from.m_index(l)];
    return out;
}

CriticalPoint newton_critical_point(const ProblemSpec& problem, const GalerkinBasis& basis,
                                    const CoefficientVector& init,
                                    const SolverOptions& opts) {
    if (init.size() != basis.dimension())
        throw std::invalid_argument("newton_critical_point: init has wrong dimension");
    NewtonResult nr = newton_core(problem, basis, init, opts);
    return finish_point(problem, basis, std::move(nr), opts, /*verify=*/true);
}

std::vector<CriticalPoint> saddle_search(const ProblemSpec& problem,
                                         const GalerkinBasis& basis,
                                         const SolverOptions& opts) {
    const std::size_t dim = basis.dimension();
    const std::size_t dirs =
        opts.directions_per_radius == 0 ? 2 * dim + 2 : opts.directions_per_radius;

    // Seeds are generated up front so the multistart is deterministic for a
    // fixed option seed regardless of worker scheduling.
    std::vector<CoefficientVector> seeds;
    seeds.emplace_back(dim, 0.0); // the trivial start

    const auto order = seed_coordinate_order(problem, basis);
    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    for (double radius : opts.radii) {
        std::size_t produced = 0;
        for (std::size_t i = 0; i < order.size() && produced + 2 <= dirs; ++i) {
            for (double sign : {1.0, -1.0}) {
                if (produced >= dirs) break;
                CoefficientVector s(dim, 0.0);
                s[order[i]] = sign * radius;
                seeds.push_back(std::move(s));
                ++produced;
            }
        }
        while (produced < dirs) {
            CoefficientVector s(dim);
            double norm = 0.0;
            for (double& v : s) {
                v = normal(rng);
                norm += v * v;
            }
            norm = std::sqrt(norm);
            if (norm == 0.0) continue;
            for (double& v : s) v *= radius / norm;
            seeds.push_back(std::move(s));
            ++produced;
        }
    }

    std::vector<NewtonResult> results(seeds.size());
    parallel_for(seeds.size(), opts.jobs, [&](std::size_t i) {
        results[i] = newton_core(problem, basis, seeds[i], opts);
    });

    // Keep converged runs, deduplicated by coefficient distance in seed order.
    std::vector<NewtonResult> unique;
    for (auto& r : results) {
        if (!r.converged) continue;
        bool duplicate = false;
        for (const auto& u : unique)
            if (distance2(u.x, r.x) < opts.dedup_distance) {
                duplicate = true;
                break;
            }
        if (!duplicate) unique.push_back(std::move(r));
    }

    std::vector<CriticalPoint> points;
    if (unique.empty()) {
        // Every start failed; surface the best effort unconverged iterate.
        if (!results.empty()) {
            auto best = std::min_element(results.begin(), results.end(),
                                         [](const NewtonResult& a, const NewtonResult& b) {
                                             return a.gradient_norm < b.gradient_norm;
                                         });
            points.push_back(
                finish_point(problem, basis, std::move(*best), opts, /*verify=*/true));
        }
        return points;
    }

    // Polish at the refinement basis, re-deduplicate, then verify.
    const std::size_t refine_modes = std::max(opts.refine_modes, basis.modes());
    const GalerkinBasis refined(problem.mesh, refine_modes,
                                std::max(2 * refine_modes + 10, basis.quad_order()));

    std::vector<NewtonResult> polished(unique.size());
    parallel_for(unique.size(), opts.jobs, [&](std::size_t i) {
        polished[i] =
            newton_core(problem, refined, embed_coefficients(basis, refined, unique[i].x),
                        opts);
    });

    std::vector<NewtonResult> final_unique;
    for (auto& r : polished) {
        if (!r.converged) continue;
        bool duplicate = false;
        for (const auto& u : final_unique)
            if (distance2(u.x, r.x) < opts.dedup_distance) {
                duplicate = true;
                break;
            }
        if (!duplicate) final_unique.push_back(std::move(r));
    }

    for (auto& r : final_unique)
        points.push_back(finish_point(problem, refined, std::move(r), opts, /*verify=*/true));

    std::stable_sort(points.begin(), points.end(),
                     [](const CriticalPoint& a, const CriticalPoint& b) {
                         return a.energy < b.energy;
                     });
    return points;
}

} // namespace impulsive
