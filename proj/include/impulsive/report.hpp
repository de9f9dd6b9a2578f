#pragma once

// Machine-readable run reports. JSON serialization uses shortest
// round-trip number formatting (lossless for doubles); CSV output carries
// 17 significant digits.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "impulsive/problem_io.hpp"
#include "impulsive/resonance.hpp"
#include "impulsive/shooting.hpp"
#include "impulsive/solver.hpp"
#include "impulsive/spectral.hpp"

namespace impulsive {

struct RunReport {
    const LoadedProblem* loaded = nullptr;
    SpectralReport spectral;
    ResonanceValue resonance;
    MorseReport morse;
    std::optional<Certificate> certificate;
    std::vector<CriticalPoint> critical_points;
    std::vector<std::string> solution_files; // parallel to nontrivial points
    bool include_solver_section = false;
    std::uint64_t seed = 0;
};

nlohmann::ordered_json to_json(const SpectralReport& r);
nlohmann::ordered_json to_json(const ResonanceValue& r);
nlohmann::ordered_json to_json(const MorseReport& r);
nlohmann::ordered_json to_json(const Certificate& c);
nlohmann::ordered_json to_json(const ResidualReport& r);
nlohmann::ordered_json to_json(const RunReport& r);

std::string format_float(double v); // 17 significant digits

// Sample grid for solution CSVs: per-subinterval uniform closed grids,
// nodes included once, `total` points overall.
std::vector<double> solution_sample_grid(const ImpulseMesh& mesh, std::size_t total);

void write_solution_csv(const std::string& path, const std::vector<double>& x,
                        const std::vector<double>& u);

struct CsvSolution {
    std::vector<double> x, u;
};
CsvSolution read_solution_csv(const std::string& path);

} // namespace impulsive
