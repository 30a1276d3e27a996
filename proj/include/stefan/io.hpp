// Result serialization: plot-ready CSV artifacts plus JSON summaries, and
// the reader that reconstructs a run for offline verification. CSV files
// carry a header row, LF line endings and 17-significant-digit floats, so
// identical configs give byte-identical output on one platform.
#pragma once

#include <string>
#include <vector>

#include "stefan/analysis.hpp"
#include "stefan/config.hpp"
#include "stefan/core.hpp"
#include "stefan/solver.hpp"
#include "stefan/velocity.hpp"

namespace stefan {

// shortest round-trip decimal representation, "%.17g"
std::string format_double(double x);

// Writes trajectory.csv, field_XXXX.csv, energy.csv and summary.json into
// dir (created if absent), honoring the format toggles in out.
void write_result(const std::string& dir, const SimulationResult& result,
                  const Grid1D& grid, const PhysicalParams& params,
                  const VelocityLaw& law, const OutputOptions& out);

// A run read back from disk; enough context to re-run every checker.
struct RunArtifacts {
    Grid1D grid;
    PhysicalParams params;
    VelocityLaw law;
    SimulationResult result;
};

// Throws MissingArtifacts when a file is absent or truncated.
RunArtifacts read_result(const std::string& dir);

void write_verify_report(const std::string& dir,
                         const std::vector<TheoremReport>& reports);

}  // namespace stefan
