#include "impulsive/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace impulsive {

using nlohmann::ordered_json;

std::string format_float(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ordered_json to_json(const SpectralReport& r) {
    ordered_json subs = ordered_json::array();
    for (std::size_t j = 0; j < r.subintervals.size(); ++j) {
        const auto& s = r.subintervals[j];
        subs.push_back({{"index", j + 1},
                        {"length", s.length},
                        {"a", s.a},
                        {"eigenvalues", s.eigenvalues},
                        {"nonresonant", s.nonresonant},
                        {"margin", s.margin},
                        {"relative_margin", s.rel_margin},
                        {"eigenvalues_below_a", s.d},
                        {"class", s.below_first ? "below_first_eigenvalue"
                                                : "above_first_eigenvalue"}});
    }
    return {{"subintervals", std::move(subs)},
            {"k_saddle", r.k_saddle},
            {"all_nonresonant", r.all_nonresonant}};
}

ordered_json to_json(const ResonanceValue& r) {
    return {{"det", r.det}, {"in_resonance_set", r.in_B}, {"threshold", r.threshold}};
}

ordered_json to_json(const MorseReport& r) {
    ordered_json matrix = ordered_json::array();
    for (std::size_t i = 0; i < r.matrix.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < r.matrix.cols(); ++j) row.push_back(r.matrix(i, j));
        matrix.push_back(std::move(row));
    }
    ordered_json groups;
    if (r.critical_groups.defined) {
        groups = ordered_json::array();
        for (int q = 0; q <= r.critical_groups.q_max; ++q)
            groups.push_back({{"q", q},
                              {"group", q == r.critical_groups.nonzero_q
                                            ? r.critical_groups.group
                                            : "0"}});
    } else {
        groups = "undefined: b lies in the resonance set";
    }
    return {{"matrix", std::move(matrix)},
            {"eigenvalues", r.eigenvalues},
            {"m0", r.m0},
            {"nondegenerate", r.nondegenerate},
            {"zero_tolerance", r.zero_tol},
            {"critical_groups", std::move(groups)}};
}

ordered_json to_json(const Certificate& c) {
    ordered_json hyp = ordered_json::array();
    for (const auto& h : c.hypotheses)
        hyp.push_back({{"name", h.name}, {"pass", h.pass}, {"detail", h.detail}});

    ordered_json out{
        {"hypotheses", std::move(hyp)},
        {"hypotheses_pass", c.hypotheses_pass},
        {"slope_above_first_eigenvalue",
         {{"holds", c.slope_above_first_eigenvalue}, {"witness_subinterval", c.slope_witness}}},
        {"quadratic_form_nonnegative",
         {{"holds", c.quadratic_form_nonnegative},
          {"lambda_max", c.lambda_max},
          {"witness_direction", c.direction_witness}}},
        {"impulse_below_hat_threshold",
         {{"holds", c.impulse_below_hat_threshold},
          {"witness_node", c.hat_witness},
          {"thresholds", c.hat_thresholds}}},
        {"k_saddle", c.k_saddle},
        {"m0", c.m0},
        {"conclusion", c.conclusion}};
    if (c.equally_spaced) {
        out["equal_spacing"] = {{"first_eigenvalue", c.equal_spacing_lambda1},
                                {"impulse_threshold", c.equal_spacing_b_threshold},
                                {"max_a_exceeds_first_eigenvalue", c.equal_spacing_a_exceeds},
                                {"min_b_at_or_below_threshold", c.equal_spacing_b_below}};
    } else {
        out["equal_spacing"] = nullptr;
    }
    return out;
}

ordered_json to_json(const ResidualReport& r) {
    return {{"ode", r.ode_residual},
            {"jump", r.jump_residuals},
            {"boundary_left", r.boundary_left},
            {"boundary_right", r.boundary_right},
            {"weak", r.weak_residual},
            {"max", r.max_residual()}};
}

ordered_json to_json(const RunReport& r) {
    const LoadedProblem& lp = *r.loaded;
    const ProblemSpec& p = lp.problem;

    ordered_json problem{
        {"mesh",
         {{"points", std::vector<double>(p.mesh.interior_points().begin(),
                                         p.mesh.interior_points().end())},
          {"subinterval_lengths",
           std::vector<double>(p.mesh.lengths().begin(), p.mesh.lengths().end())}}},
        {"a", p.a},
        {"b", p.b},
        {"g", {{"name", lp.g_name}, {"scale", p.g.scale}, {"scale_by_a", p.g.scale_by_a}}},
        {"h", lp.h_names},
        {"solver",
         {{"modes", lp.modes},
          {"quad_order", lp.effective_quad_order()},
          {"gradient_tol", lp.solver.gradient_tol},
          {"max_iters", lp.solver.max_iters},
          {"radii", lp.solver.radii},
          {"refine_modes", lp.solver.refine_modes},
          {"seed", r.seed}}}};

    ordered_json out{{"problem", std::move(problem)},
                     {"spectral", to_json(r.spectral)},
                     {"resonance", to_json(r.resonance)},
                     {"morse", to_json(r.morse)}};
    out["certificate"] = r.certificate ? to_json(*r.certificate) : ordered_json(nullptr);

    if (r.include_solver_section) {
        ordered_json points = ordered_json::array();
        std::size_t csv_index = 0;
        for (std::size_t i = 0; i < r.critical_points.size(); ++i) {
            const auto& cp = r.critical_points[i];
            ordered_json entry{
                {"index", i + 1},
                {"node_values", cp.node_values},
                {"initial_slope", cp.initial_slope},
                {"energy", cp.energy},
                {"gradient_norm", cp.gradient_norm},
                {"inertia",
                 {{"negative", cp.inertia.negative},
                  {"zero", cp.inertia.zero},
                  {"positive", cp.inertia.positive}}},
                {"converged", cp.converged},
                {"trivial", cp.trivial},
                {"basis_modes", cp.basis_modes},
                {"residuals", to_json(cp.verification)},
                {"witness_slope", cp.witness_slope},
                {"witness_node_distance", cp.witness_node_distance}};
            if (!cp.trivial && csv_index < r.solution_files.size())
                entry["solution_csv"] = r.solution_files[csv_index++];
            else
                entry["solution_csv"] = nullptr;
            points.push_back(std::move(entry));
        }
        out["critical_points"] = std::move(points);
    }
    out["seed"] = r.seed;
    return out;
}

std::vector<double> solution_sample_grid(const ImpulseMesh& mesh, std::size_t total) {
    const std::size_t nsub = mesh.subinterval_count();
    if (total < nsub * 8) total = nsub * 8;

    // Distribute the total - 1 gaps proportionally to subinterval length.
    std::vector<std::size_t> gaps(nsub);
    std::size_t assigned = 0;
    for (std::size_t j = 0; j < nsub; ++j) {
        gaps[j] = std::max<std::size_t>(
            4, static_cast<std::size_t>(mesh.length(j + 1) * static_cast<double>(total - 1)));
        assigned += gaps[j];
    }
    while (assigned > total - 1) {
        for (std::size_t j = 0; j < nsub && assigned > total - 1; ++j)
            if (gaps[j] > 4) {
                --gaps[j];
                --assigned;
            }
    }
    while (assigned < total - 1) {
        for (std::size_t j = 0; j < nsub && assigned < total - 1; ++j) {
            ++gaps[j];
            ++assigned;
        }
    }

    std::vector<double> grid;
    grid.reserve(total);
    grid.push_back(0.0);
    for (std::size_t j = 1; j <= nsub; ++j) {
        const double left = mesh.boundary_node(j - 1);
        const double right = mesh.boundary_node(j);
        const std::size_t n = gaps[j - 1];
        for (std::size_t i = 1; i <= n; ++i)
            grid.push_back(i == n ? right
                                  : left + (right - left) * static_cast<double>(i) /
                                               static_cast<double>(n));
    }
    return grid;
}

void write_solution_csv(const std::string& path, const std::vector<double>& x,
                        const std::vector<double>& u) {
    std::ofstream out(path);
    if (!out) throw std::ios_base::failure("cannot write " + path);
    out << "x,u\n";
    for (std::size_t i = 0; i < x.size(); ++i)
        out << format_float(x[i]) << ',' << format_float(u[i]) << '\n';
    if (!out) throw std::ios_base::failure("write failed: " + path);
}

CsvSolution read_solution_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open " + path);
    CsvSolution sol;
    std::string line;
    if (!std::getline(in, line)) throw std::ios_base::failure("empty csv: " + path);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::ios_base::failure("malformed csv row in " + path);
        sol.x.push_back(std::stod(line.substr(0, comma)));
        sol.u.push_back(std::stod(line.substr(comma + 1)));
    }
    return sol;
}

} // namespace impulsive
