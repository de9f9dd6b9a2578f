// impulse-morse: analyze / solve / verify / sweep for impulsive two-point
// boundary value problems described by TOML problem files.
//
// Exit codes: 0 success, 1 I/O failure, 2 schema or parse error,
// 3 solver non-convergence, 4 verification failure above threshold.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "impulsive/parallel.hpp"
#include "impulsive/report.hpp"
#include "impulsive/resonance.hpp"
#include "impulsive/shooting.hpp"
#include "impulsive/solver.hpp"
#include "impulsive/toml.hpp"

namespace fs = std::filesystem;
using namespace impulsive;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitSchema = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitVerification = 4;

struct CommonArgs {
    std::string problem_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::size_t jobs = 0; // 0 = hardware concurrency
};

struct SweepArgs {
    std::string param = "b";
    int index = 1;
    std::string range = "0:1";
    std::size_t steps = 11;
    // optional second dimension
    std::string param2;
    int index2 = 1;
    std::string range2;
    std::size_t steps2 = 0;
};

std::pair<double, double> parse_range(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw SchemaError("sweep range must look like LO:HI, got \"" + text + "\"");
    try {
        return {std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
    } catch (const std::exception&) {
        throw SchemaError("cannot parse sweep range \"" + text + "\"");
    }
}

void write_text_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::ios_base::failure("cannot write " + path.string());
    out << text;
    if (!out) throw std::ios_base::failure("write failed: " + path.string());
}

RunReport analysis_report(const LoadedProblem& loaded, std::uint64_t seed) {
    RunReport report;
    report.loaded = &loaded;
    report.seed = seed;
    report.spectral = spectral_report(loaded.problem.mesh, loaded.problem.a);
    report.resonance = resonance_det(loaded.problem.mesh, loaded.problem.b);
    report.morse = morse_report(loaded.problem.mesh, loaded.problem.b);
    if (loaded.certificate_check)
        report.certificate = nontriviality_certificate(loaded.problem);
    return report;
}

void print_summary(const RunReport& report) {
    std::cout << "resonance det = " << format_float(report.resonance.det)
              << (report.resonance.in_B ? " (IN resonance set)" : "") << "\n";
    std::cout << "morse index m0 = " << report.morse.m0
              << (report.morse.nondegenerate ? "" : " (degenerate)") << "\n";
    std::cout << "k_saddle = " << report.spectral.k_saddle << "\n";
    if (report.certificate)
        std::cout << "certificate: " << report.certificate->conclusion << "\n";
}

int run_analyze(const CommonArgs& args) {
    const LoadedProblem loaded = parse_problem_file(args.problem_path);
    const std::uint64_t seed = args.seed_given ? args.seed : loaded.solver.seed;
    RunReport report = analysis_report(loaded, seed);
    report.include_solver_section = false;

    fs::create_directories(args.out_dir);
    write_text_file(fs::path(args.out_dir) / "report.json", to_json(report).dump(2) + "\n");
    print_summary(report);
    return kExitOk;
}

int run_solve(const CommonArgs& args) {
    const LoadedProblem loaded = parse_problem_file(args.problem_path);
    const std::uint64_t seed = args.seed_given ? args.seed : loaded.solver.seed;

    RunReport report = analysis_report(loaded, seed);
    report.include_solver_section = true;

    SolverOptions opts = loaded.solver;
    opts.seed = seed;
    opts.jobs = args.jobs;
    const GalerkinBasis basis(loaded.problem.mesh, loaded.modes,
                              loaded.effective_quad_order());
    report.critical_points = saddle_search(loaded.problem, basis, opts);

    bool any_converged = false;
    for (const auto& cp : report.critical_points) any_converged |= cp.converged;

    fs::create_directories(args.out_dir);
    const auto grid = solution_sample_grid(loaded.problem.mesh, 4096);
    std::size_t csv_index = 0;
    for (const auto& cp : report.critical_points) {
        if (cp.trivial) continue;
        const auto traj =
            shoot_sampled(loaded.problem, cp.witness_slope, opts.integrator_tol, grid);
        const std::string name = "solution_" + std::to_string(++csv_index) + ".csv";
        write_solution_csv((fs::path(args.out_dir) / name).string(), traj.x, traj.u);
        report.solution_files.push_back(name);
    }

    write_text_file(fs::path(args.out_dir) / "report.json", to_json(report).dump(2) + "\n");
    print_summary(report);
    std::cout << "critical points: " << report.critical_points.size() << " ("
              << report.solution_files.size() << " nontrivial)\n";
    return any_converged ? kExitOk : kExitNoConvergence;
}

int run_verify(const CommonArgs& args, const std::string& solution_path, double threshold) {
    const LoadedProblem loaded = parse_problem_file(args.problem_path);
    const CsvSolution csv = read_solution_csv(solution_path);
    const ResidualReport residuals =
        verify_solution(loaded.problem, SampledFunction{csv.x, csv.u});

    std::cout << to_json(residuals).dump(2) << "\n";
    const bool pass = residuals.passes(threshold);
    std::cout << (pass ? "PASS" : "FAIL") << " at threshold " << format_float(threshold)
              << "\n";
    return pass ? kExitOk : kExitVerification;
}

int run_sweep(const CommonArgs& args, const SweepArgs& sweep) {
    const LoadedProblem loaded = parse_problem_file(args.problem_path);
    const ProblemSpec& base = loaded.problem;
    const std::size_t m = base.node_count();

    auto check_param = [&](const std::string& param, int index) {
        if (param != "a" && param != "b")
            throw SchemaError("sweep parameter must be \"a\" or \"b\"");
        const std::size_t limit = param == "a" ? m + 1 : m;
        if (index < 1 || static_cast<std::size_t>(index) > limit)
            throw SchemaError("sweep index " + std::to_string(index) +
                              " out of range 1.." + std::to_string(limit));
    };
    check_param(sweep.param, sweep.index);
    const auto [lo, hi] = parse_range(sweep.range);
    if (sweep.steps < 2) throw SchemaError("sweep steps must be >= 2");

    const bool two_dim = !sweep.param2.empty();
    double lo2 = 0.0, hi2 = 0.0;
    if (two_dim) {
        check_param(sweep.param2, sweep.index2);
        if (sweep.range2.empty() || sweep.steps2 < 2)
            throw SchemaError("second sweep dimension needs --sweep-range2 and --sweep-steps2 >= 2");
        std::tie(lo2, hi2) = parse_range(sweep.range2);
    }

    const std::size_t rows = sweep.steps * (two_dim ? sweep.steps2 : 1);
    std::vector<std::string> lines(rows);

    parallel_for(rows, args.jobs, [&](std::size_t row) {
        const std::size_t i = two_dim ? row / sweep.steps2 : row;
        const std::size_t k = two_dim ? row % sweep.steps2 : 0;
        const double v1 = lo + (hi - lo) * static_cast<double>(i) /
                                   static_cast<double>(sweep.steps - 1);
        ProblemSpec p = base;
        (sweep.param == "a" ? p.a : p.b)[static_cast<std::size_t>(sweep.index - 1)] = v1;
        double v2 = 0.0;
        if (two_dim) {
            v2 = lo2 + (hi2 - lo2) * static_cast<double>(k) /
                            static_cast<double>(sweep.steps2 - 1);
            (sweep.param2 == "a" ? p.a : p.b)[static_cast<std::size_t>(sweep.index2 - 1)] = v2;
        }

        const auto det = resonance_det(p.mesh, p.b);
        const auto morse = morse_report(p.mesh, p.b);
        const auto cert = nontriviality_certificate(p);
        std::string line = format_float(v1);
        if (two_dim) line += "," + format_float(v2);
        line += "," + format_float(det.det) + "," + std::to_string(morse.m0) + "," +
                (cert.guaranteed ? "guaranteed" : "not-guaranteed");
        lines[row] = std::move(line);
    });

    fs::create_directories(args.out_dir);
    const fs::path path = fs::path(args.out_dir) / "sweep.csv";
    std::ofstream out(path);
    if (!out) throw std::ios_base::failure("cannot write " + path.string());
    out << (two_dim ? "param1,param2,det,m0,conclusion" : "param,det,m0,conclusion") << "\n";
    for (const auto& line : lines) out << line << "\n";
    if (!out) throw std::ios_base::failure("write failed: " + path.string());
    std::cout << "sweep rows: " << rows << " -> " << path.string() << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Variational toolkit for impulsive two-point boundary value problems"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string solution_path;
    double threshold = 1e-6;
    SweepArgs sweep;

    auto add_common = [&](CLI::App* cmd, bool needs_problem = true) {
        auto* p = cmd->add_option("--problem", args.problem_path, "problem file (TOML)");
        if (needs_problem) p->required();
        cmd->add_option("--out", args.out_dir, "output directory (default .)");
        cmd->add_option("--seed", args.seed, "multistart random seed (default 0)")
            ->each([&](const std::string&) { args.seed_given = true; });
        cmd->add_option("--jobs", args.jobs, "worker threads (default: processors)");
    };

    CLI::App* analyze = app.add_subcommand("analyze", "spectral/resonance/certificate report");
    add_common(analyze);

    CLI::App* solve = app.add_subcommand("solve", "locate and verify critical points");
    add_common(solve);

    CLI::App* verify = app.add_subcommand("verify", "residuals of a solution CSV");
    add_common(verify);
    verify->add_option("--solution", solution_path, "solution CSV (x,u)")->required();
    verify->add_option("--threshold", threshold, "residual pass level (default 1e-6)");

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "grid scan over a coefficient family");
    add_common(sweep_cmd);
    sweep_cmd->add_option("--sweep-param", sweep.param, "a or b (default b)");
    sweep_cmd->add_option("--sweep-index", sweep.index, "1-based coefficient index");
    sweep_cmd->add_option("--sweep-range", sweep.range, "LO:HI")->required();
    sweep_cmd->add_option("--sweep-steps", sweep.steps, "grid points (>= 2)")->required();
    sweep_cmd->add_option("--sweep-param2", sweep.param2, "optional second dimension: a or b");
    sweep_cmd->add_option("--sweep-index2", sweep.index2, "second 1-based index");
    sweep_cmd->add_option("--sweep-range2", sweep.range2, "second LO:HI");
    sweep_cmd->add_option("--sweep-steps2", sweep.steps2, "second grid points");

    CLI11_PARSE(app, argc, argv);

    const auto start = std::chrono::steady_clock::now();
    int code = kExitOk;
    try {
        if (analyze->parsed())
            code = run_analyze(args);
        else if (solve->parsed())
            code = run_solve(args);
        else if (verify->parsed())
            code = run_verify(args, solution_path, threshold);
        else if (sweep_cmd->parsed())
            code = run_sweep(args, sweep);
    } catch (const toml::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitSchema;
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kExitSchema;
    } catch (const std::invalid_argument& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kExitSchema;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }

    const auto elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cerr << "timing: " << elapsed << " s\n";
    return code;
}
