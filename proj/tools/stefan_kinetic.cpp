// stefan-kinetic: batch driver around the solver library.
//   run      --config PATH [--out DIR] [--stride N]
//   verify   --out DIR
//   oracle   SCENARIO [--out DIR]
//   laminate --spec PATH --trajectory PATH [--out DIR]
//            | --random N [--seed S]
//   sweep    SCENARIO [--out DIR]
#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "stefan/commands.hpp"
#include "stefan/laminate.hpp"

int main(int argc, char** argv) {
    CLI::App app{"two-phase free-boundary solver with kinetic interface "
                 "condition"};
    app.require_subcommand(1);

    std::string config_path, out_dir, spec_path, trajectory_path, scenario;
    std::size_t stride = 0, random_trials = 0;
    std::uint64_t seed = 1;

    auto* run = app.add_subcommand("run", "integrate a config end to end");
    run->add_option("--config", config_path, "run configuration file")
        ->required();
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--stride", stride, "snapshot stride override");

    auto* verify =
        app.add_subcommand("verify", "check the theorems on a finished run");
    verify->add_option("--out", out_dir, "directory holding a run output")
        ->required();

    auto* oracle =
        app.add_subcommand("oracle", "reference data for a catalog scenario");
    oracle->add_option("scenario", scenario, "scenario id")->required();
    oracle->add_option("--out", out_dir, "output directory");

    auto* laminate =
        app.add_subcommand("laminate", "laminate reconstruction and audit");
    laminate->add_option("--spec", spec_path, "laminate spec file");
    laminate->add_option("--trajectory", trajectory_path,
                         "trajectory.csv from a run");
    laminate->add_option("--random", random_trials,
                         "audit N randomized compatible specs instead");
    laminate->add_option("--seed", seed, "seed for --random");
    laminate->add_option("--out", out_dir, "output directory");

    auto* sweep =
        app.add_subcommand("sweep", "parallel grid-refinement sweep");
    sweep->add_option("scenario", scenario, "scenario id")->required();
    sweep->add_option("--out", out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    // run: an empty --out defers to the config's output.dir
    const std::string tool_out = out_dir.empty() ? "out" : out_dir;
    if (run->parsed()) return stefan::cmd_run(config_path, out_dir, stride);
    if (verify->parsed()) return stefan::cmd_verify(out_dir);
    if (oracle->parsed()) return stefan::cmd_oracle(scenario, tool_out);
    if (sweep->parsed()) return stefan::cmd_sweep(scenario, tool_out);
    if (laminate->parsed()) {
        if (random_trials > 0) {
            for (std::size_t i = 0; i < random_trials; ++i) {
                try {
                    (void)stefan::random_compatible_spec(seed + i);
                } catch (const std::exception& e) {
                    std::cerr << "trial " << i << " failed: " << e.what()
                              << '\n';
                    return 1;
                }
            }
            std::cout << random_trials << " randomized specs compatible\n";
            return 0;
        }
        if (spec_path.empty() || trajectory_path.empty()) {
            std::cerr << "laminate needs --spec and --trajectory (or "
                         "--random N)\n";
            return 2;
        }
        return stefan::cmd_laminate(spec_path, trajectory_path, tool_out);
    }
    return 2;
}
