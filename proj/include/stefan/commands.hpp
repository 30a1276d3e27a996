// Batch command implementations behind the CLI: each returns a process
// exit code (0 success, 1 verification failure, 2 configuration error,
// 3 numeric failure) and writes its artifacts under an output directory.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace stefan {

// Runs a config file end to end and writes trajectory.csv, field_XXXX.csv,
// energy.csv and summary.json. out_dir overrides output.dir when nonempty;
// stride overrides output.stride when nonzero.
int cmd_run(const std::string& config_path, const std::string& out_dir = "",
            std::size_t stride = 0);

// Re-reads a cmd_run output, runs every theorem checker and writes
// verify.json; 0 iff no checker failed.
int cmd_verify(const std::string& result_dir);

// Scenario-specific reference data: grid-convergence tables for the
// catalog baselines, Neumann similarity comparisons (t, u_sim, u_neumann,
// gap) for the stiff-kinetics sweep and the equilibrium fixed point.
int cmd_oracle(const std::string& scenario_id, const std::string& out_dir);

// Laminate reconstruction over a recorded trajectory: deformation
// snapshots (t, u, c1, c2), the moving-mask audit and the entropy-source
// residual series.
int cmd_laminate(const std::string& spec_path,
                 const std::string& trajectory_path,
                 const std::string& out_dir);

// Grid-refinement sweep of a catalog scenario across parallel independent
// runs (capped by STEFAN_KINETIC_THREADS); writes sweep.csv.
int cmd_sweep(const std::string& scenario_id, const std::string& out_dir,
              std::vector<std::size_t> levels = {});

}  // namespace stefan
