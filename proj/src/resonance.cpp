#include "impulsive/resonance.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace impulsive {

namespace {

linalg::Matrix resonance_matrix(const ImpulseMesh& mesh, std::span<const double> b) {
    const std::size_t m = mesh.interior_count();
    const auto& g = mesh.gram();
    linalg::Matrix a(m, m);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k)
            a(j, k) = b[j] * g(j, k) - (j == k ? 1.0 : 0.0);
    return a;
}

void require_length(std::span<const double> b, std::size_t m, const char* who) {
    if (b.size() != m)
        throw std::invalid_argument(std::string(who) + ": b must have length m = " +
                                    std::to_string(m));
}

} // namespace

ResonanceValue resonance_det(const ImpulseMesh& mesh, std::span<const double> b) {
    const std::size_t m = mesh.interior_count();
    require_length(b, m, "resonance_det");

    ResonanceValue out;
    out.det = linalg::det(resonance_matrix(mesh, b));

    double b_inf = 0.0;
    for (double v : b) b_inf = std::max(b_inf, std::abs(v));
    const double scale = 1.0 + b_inf * mesh.gram().inf_norm();
    out.threshold = 1e-10 * std::pow(scale, static_cast<double>(m));
    out.in_B = std::abs(out.det) <= out.threshold;
    return out;
}

MorseReport morse_report(const ImpulseMesh& mesh, std::span<const double> b) {
    const std::size_t m = mesh.interior_count();
    require_length(b, m, "morse_report");
    const auto& g = mesh.gram();

    MorseReport report;
    report.matrix = linalg::Matrix(m, m);
    // A_jk = G_jk - sum_l b_l G_jl G_kl; assembled symmetric by construction.
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = j; k < m; ++k) {
            double v = g(j, k);
            for (std::size_t l = 0; l < m; ++l) v -= b[l] * g(j, l) * g(k, l);
            report.matrix(j, k) = v;
            report.matrix(k, j) = v;
        }

    report.eigenvalues = linalg::sym_eigen(report.matrix).values;
    report.zero_tol = 1e-10 * (1.0 + report.matrix.inf_norm());
    report.m0 = 0;
    report.nondegenerate = true;
    for (double lambda : report.eigenvalues) {
        if (lambda < -report.zero_tol) ++report.m0;
        if (std::abs(lambda) <= report.zero_tol) report.nondegenerate = false;
    }

    report.critical_groups.q_max = static_cast<int>(m);
    if (report.nondegenerate) {
        report.critical_groups.defined = true;
        report.critical_groups.nonzero_q = report.m0;
    } else {
        report.critical_groups.defined = false; // b lies in the resonance set
        report.critical_groups.nonzero_q = -1;
    }
    return report;
}

PathScanReport resonance_path_scan(const ImpulseMesh& mesh,
                                   std::span<const double> b_start,
                                   std::span<const double> b_end, std::size_t steps,
                                   double refine_width) {
    const std::size_t m = mesh.interior_count();
    require_length(b_start, m, "resonance_path_scan");
    require_length(b_end, m, "resonance_path_scan");
    if (steps < 2) throw std::invalid_argument("resonance_path_scan: steps must be >= 2");

    auto at = [&](double t) {
        std::vector<double> b(m);
        for (std::size_t i = 0; i < m; ++i)
            b[i] = b_start[i] + t * (b_end[i] - b_start[i]);
        return b;
    };

    double span_inf = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        span_inf = std::max(span_inf, std::abs(b_end[i] - b_start[i]));

    if (resonance_det(mesh, b_start).in_B)
        throw std::invalid_argument("resonance_path_scan: start point lies in the resonance set");
    if (resonance_det(mesh, b_end).in_B)
        throw std::invalid_argument("resonance_path_scan: end point lies in the resonance set");

    PathScanReport report;
    report.samples.reserve(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(steps - 1);
        PathSample s;
        s.t = t;
        s.b = at(t);
        s.det = resonance_det(mesh, s.b).det;
        s.m0 = morse_report(mesh, s.b).m0;
        report.samples.push_back(std::move(s));
    }

    for (std::size_t i = 0; i + 1 < steps; ++i) {
        const double d0 = report.samples[i].det;
        const double d1 = report.samples[i + 1].det;
        if (!(d0 * d1 < 0.0)) continue;

        double lo = report.samples[i].t, hi = report.samples[i + 1].t;
        double dlo = d0;
        // Bisect until the bracket width in b-space drops below refine_width.
        while ((hi - lo) * span_inf > refine_width && hi - lo > 1e-17) {
            const double mid = 0.5 * (lo + hi);
            const double dm = resonance_det(mesh, at(mid)).det;
            if (dm == 0.0) {
                lo = hi = mid;
                break;
            }
            if (dlo * dm < 0.0) {
                hi = mid;
            } else {
                lo = mid;
                dlo = dm;
            }
        }

        PathCrossing crossing;
        crossing.t = 0.5 * (lo + hi);
        crossing.b = at(crossing.t);
        crossing.m0_before = report.samples[i].m0;
        crossing.m0_after = report.samples[i + 1].m0;

        const auto morse = morse_report(mesh, crossing.b);
        const double mult_tol = 1e-7 * (1.0 + morse.matrix.inf_norm());
        crossing.multiplicity = 0;
        for (double lambda : morse.eigenvalues)
            if (std::abs(lambda) <= mult_tol) ++crossing.multiplicity;

        report.crossings.push_back(std::move(crossing));
    }

    // Between consecutive crossings the Morse index must not move.
    std::size_t c = 0;
    for (std::size_t i = 0; i + 1 < steps && report.m0_constant_between_crossings; ++i) {
        while (c < report.crossings.size() && report.crossings[c].t < report.samples[i].t) ++c;
        const bool crossing_inside = c < report.crossings.size() &&
                                     report.crossings[c].t >= report.samples[i].t &&
                                     report.crossings[c].t <= report.samples[i + 1].t;
        if (!crossing_inside &&
            report.samples[i].m0 != report.samples[i + 1].m0)
            report.m0_constant_between_crossings = false;
    }
    return report;
}

Certificate nontriviality_certificate(const ProblemSpec& problem, double rel_tol) {
    const ImpulseMesh& mesh = problem.mesh;
    const std::size_t m = mesh.interior_count();

    Certificate cert;
    const auto spectral = spectral_report(mesh, problem.a, rel_tol);
    const auto resonance = resonance_det(mesh, problem.b);
    const auto morse = morse_report(mesh, problem.b);

    cert.k_saddle = spectral.k_saddle;
    cert.m0 = morse.m0;

    {
        HypothesisCheck c;
        c.name = "subinterval_slopes_nonresonant";
        c.pass = spectral.all_nonresonant;
        if (!c.pass) {
            for (std::size_t j = 0; j < spectral.subintervals.size(); ++j)
                if (!spectral.subintervals[j].nonresonant)
                    c.detail += (c.detail.empty() ? "subinterval " : ", ") + std::to_string(j + 1);
            c.detail += " too close to a Dirichlet eigenvalue";
        }
        cert.hypotheses.push_back(std::move(c));
    }
    {
        HypothesisCheck c;
        c.name = "impulse_slopes_outside_resonance_set";
        c.pass = !resonance.in_B;
        if (!c.pass) c.detail = "det = " + std::to_string(resonance.det);
        cert.hypotheses.push_back(std::move(c));
    }
    {
        HypothesisCheck c;
        c.name = "sublinear_growth_declared";
        const auto& e = problem.g.entry;
        c.pass = e.is_none() || sample_sublinear_bound(e);
        if (!e.is_none() && !c.pass)
            c.detail = "entry \"" + e.name + "\" fails the declared sublinear bound";
        cert.hypotheses.push_back(std::move(c));
    }
    {
        HypothesisCheck c;
        c.name = "superlinear_impulses_declared";
        c.pass = true;
        for (const auto& e : problem.h) {
            if (e.is_none()) continue;
            if (!sample_superlinear_bound(e)) {
                c.pass = false;
                c.detail = "entry \"" + e.name + "\" fails the declared superlinear bound";
                break;
            }
        }
        cert.hypotheses.push_back(std::move(c));
    }
    cert.hypotheses_pass = true;
    for (const auto& c : cert.hypotheses) cert.hypotheses_pass &= c.pass;

    for (std::size_t j = 1; j <= m + 1; ++j) {
        if (problem.a[j - 1] > subinterval_eigenvalue(mesh, j, 1)) {
            cert.slope_above_first_eigenvalue = true;
            cert.slope_witness = static_cast<int>(j);
            break;
        }
    }

    const auto eig = linalg::sym_eigen(morse.matrix);
    cert.lambda_max = eig.values.back();
    cert.quadratic_form_nonnegative = cert.lambda_max >= 0.0;
    cert.direction_witness.resize(m);
    for (std::size_t i = 0; i < m; ++i)
        cert.direction_witness[i] = eig.vectors(i, m - 1);

    cert.hat_thresholds.resize(m);
    for (std::size_t j = 1; j <= m; ++j) {
        // 1/l_j + 1/l_{j+1} in terms of the neighbouring nodes.
        cert.hat_thresholds[j - 1] = 1.0 / mesh.length(j) + 1.0 / mesh.length(j + 1);
        if (!cert.impulse_below_hat_threshold &&
            problem.b[j - 1] <= cert.hat_thresholds[j - 1]) {
            cert.impulse_below_hat_threshold = true;
            cert.hat_witness = static_cast<int>(j);
        }
    }

    cert.equally_spaced = mesh.equally_spaced();
    if (cert.equally_spaced) {
        const double mp1 = static_cast<double>(m + 1);
        cert.equal_spacing_lambda1 = mp1 * mp1 * std::numbers::pi * std::numbers::pi;
        cert.equal_spacing_b_threshold = 2.0 * mp1;
        double a_max = problem.a[0], b_min = problem.b[0];
        for (double v : problem.a) a_max = std::max(a_max, v);
        for (double v : problem.b) b_min = std::min(b_min, v);
        cert.equal_spacing_a_exceeds = a_max > cert.equal_spacing_lambda1;
        cert.equal_spacing_b_below = b_min <= cert.equal_spacing_b_threshold;
    }

    cert.guaranteed = cert.hypotheses_pass &&
                      (cert.slope_above_first_eigenvalue || cert.quadratic_form_nonnegative);
    cert.conclusion = cert.guaranteed ? "nontrivial solution guaranteed" : "not guaranteed";
    return cert;
}

} // namespace impulsive
