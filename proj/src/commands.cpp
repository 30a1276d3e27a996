#include "stefan/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "stefan/analysis.hpp"
#include "stefan/config.hpp"
#include "stefan/io.hpp"
#include "stefan/laminate.hpp"
#include "stefan/oracle.hpp"
#include "stefan/solver.hpp"

namespace stefan {

namespace fs = std::filesystem;

namespace {

// common exception-to-exit-code mapping for all subcommands
int guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const IncompatibleSpec& e) {
        std::cerr << "error: " << e.what() << " (sigma2 = " << e.sigma2
                  << ")\n";
        return 1;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const BoundaryMismatch& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const InvalidInitialInterface& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const UnresolvableWidth& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const SignConditionViolated& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const LambdaOutOfRange& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const NotRankOne& e) {
        std::cerr << "error: " << e.what() << " (sigma2 = " << e.sigma2
                  << ")\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw ConfigError("cannot open for writing: " + p.string());
    return f;
}

InterfaceTrajectory load_trajectory(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingArtifacts("missing artifact: " + path);
    std::string line;
    std::getline(in, line);  // header
    InterfaceTrajectory tr;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ls(line);
        TrajectorySample s;
        char c;
        double gate;
        if (!(ls >> s.t >> c >> s.u >> c >> s.theta_at_u >> c >> s.v >> c >>
              gate))
            throw MissingArtifacts("malformed trajectory row: " + line);
        s.active = gate != 0.0;
        tr.push(s);
    }
    if (tr.empty()) throw MissingArtifacts("trajectory has no samples");
    return tr;
}

std::size_t thread_cap() {
    std::size_t cap = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("STEFAN_KINETIC_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) cap = std::min<std::size_t>(cap, static_cast<std::size_t>(v));
    }
    return cap;
}

SimulationResult run_built(const BuiltRun& built) {
    TemperatureField theta0(built.grid, built.theta0);
    return run_simulation(built.grid, built.params, built.law, built.solver,
                          theta0, built.u0);
}

void write_neumann_comparison(const fs::path& file, const BuiltRun& built,
                              const SimulationResult& res,
                              const NeumannSolution* sol, double* sup_gap) {
    const double horizon =
        sol ? sol->validity_horizon(built.params.L) : 1e300;
    auto f = open_out(file);
    f << "t,u_sim,u_neumann,gap\n";
    double sup = 0.0;
    for (const auto& s : res.trajectory.samples()) {
        if (s.t > horizon) break;
        const double un = sol ? sol->interface_position(s.t) : built.u0;
        const double gap = std::abs(s.u - un);
        sup = std::max(sup, gap);
        f << format_double(s.t) << ',' << format_double(s.u) << ','
          << format_double(un) << ',' << format_double(gap) << '\n';
    }
    if (sup_gap) *sup_gap = sup;
}

void write_convergence_table(const fs::path& dir, const ReferenceStudy& study) {
    auto f = open_out(dir / "convergence.csv");
    f << "n_cells,dt,t_star,final_l2\n";
    for (const auto& r : study.rows)
        f << r.n_cells << ',' << format_double(r.dt) << ','
          << format_double(r.t_star) << ',' << format_double(r.final_l2)
          << '\n';
    auto g = open_out(dir / "convergence_summary.csv");
    g << "t_star_extrapolated,observed_order\n";
    g << format_double(study.t_star_extrapolated) << ','
      << format_double(study.observed_order) << '\n';
}

}  // namespace

int cmd_run(const std::string& config_path, const std::string& out_dir,
            std::size_t stride) {
    return guarded([&] {
        const RunConfig cfg = RunConfig::parse_file(config_path);
        BuiltRun built = build_run(cfg);
        if (stride != 0) built.solver.snapshot_stride = stride;
        const SimulationResult res = run_built(built);
        OutputOptions out = built.out;
        if (!out_dir.empty()) out.dir = out_dir;
        write_result(out.dir, res, built.grid, built.params, built.law, out);
        if (res.exit)
            std::cout << "exit t_star = " << format_double(res.exit->t_star)
                      << '\n';
        else
            std::cout << "no exit before t_end\n";
        return 0;
    });
}

int cmd_verify(const std::string& result_dir) {
    return guarded([&] {
        const RunArtifacts art = read_result(result_dir);
        const auto reports =
            run_all_checks(art.result, art.params, art.law);
        write_verify_report(result_dir, reports);
        bool any_fail = false;
        for (const auto& r : reports) {
            std::cout << r.id << ": " << to_string(r.verdict)
                      << " (margin " << format_double(r.margin) << ")\n";
            if (r.verdict == Verdict::fail) any_fail = true;
        }
        return any_fail ? 1 : 0;
    });
}

int cmd_oracle(const std::string& scenario_id, const std::string& out_dir) {
    return guarded([&] {
        const fs::path root(out_dir);
        fs::create_directories(root);
        if (scenario_id == "stiff-kinetics") {
            auto g = open_out(root / "gaps.csv");
            g << "k,sup_gap,lambda,horizon\n";
            for (double k : {10.0, 100.0, 1000.0}) {
                RunConfig cfg = scenario_config(scenario_id);
                cfg.set("law.k", format_double(k));
                const BuiltRun built = build_run(cfg);
                const SimulationResult res = run_built(built);
                const NeumannSolution sol =
                    solve_neumann(built.params, built.u0);
                double sup = 0.0;
                char name[48];
                std::snprintf(name, sizeof name, "neumann_k%g.csv", k);
                write_neumann_comparison(root / name, built, res, &sol, &sup);
                g << format_double(k) << ',' << format_double(sup) << ','
                  << format_double(sol.lambda) << ','
                  << format_double(sol.validity_horizon(built.params.L))
                  << '\n';
            }
            return 0;
        }
        // catalog baselines: grid-convergence study plus a trivially flat
        // comparison for the equilibrium fixed point
        const RunConfig cfg = scenario_config(scenario_id);
        if (scenario_id == "equilibrium") {
            const BuiltRun built = build_run(cfg);
            const SimulationResult res = run_built(built);
            write_neumann_comparison(root / "neumann.csv", built, res,
                                     nullptr, nullptr);
            return 0;
        }
        const ReferenceStudy study =
            fine_grid_reference(scenario_id, {512, 1024, 2048});
        write_convergence_table(root, study);
        return 0;
    });
}

int cmd_laminate(const std::string& spec_path,
                 const std::string& trajectory_path,
                 const std::string& out_dir) {
    return guarded([&] {
        const LaminateSpec spec = load_laminate_spec(spec_path);
        const InterfaceTrajectory tr = load_trajectory(trajectory_path);
        const fs::path root(out_dir);
        fs::create_directories(root);

        const auto snaps = reconstruct_deformation(tr, spec);
        {
            auto f = open_out(root / "deformation.csv");
            f << "t,u,c1_1,c1_2,c1_3,c2_1,c2_2,c2_3,continuity_defect\n";
            for (const auto& s : snaps) {
                f << format_double(s.t) << ',' << format_double(s.u);
                for (double v : s.c1) f << ',' << format_double(v);
                for (double v : s.c2) f << ',' << format_double(v);
                f << ',' << format_double(s.continuity_defect) << '\n';
            }
        }

        double u_max = 0.0, v_sup = 0.0;
        const auto& samples = tr.samples();
        for (std::size_t i = 0; i < samples.size(); ++i) {
            u_max = std::max(u_max, samples[i].u);
            if (i + 1 < samples.size())
                v_sup = std::max(v_sup,
                                 std::abs(samples[i + 1].u - samples[i].u) /
                                     (samples[i + 1].t - samples[i].t));
        }
        const MovingMaskReport mm =
            moving_mask_audit(tr, spec, v_sup * (1.0 + 1e-9));
        {
            auto f = open_out(root / "mm_audit.csv");
            f << "partition,austenite_identity,interface_continuous,"
                 "microstructure_frozen,all\n";
            f << mm.partition_ok << ',' << mm.austenite_identity_ok << ','
              << mm.interface_continuous_ok << ','
              << mm.microstructure_frozen_ok << ',' << mm.all() << '\n';
        }

        const double span = std::max(1.0, 1.25 * u_max);
        const Grid1D grid(512, span);
        const auto residuals = entropy_source_residuals(
            tr, grid, [span](double s) { return 1.0 + s / span; });
        {
            auto f = open_out(root / "entropy_residuals.csv");
            f << "t,residual\n";
            for (std::size_t k = 0; k < residuals.size(); ++k)
                f << format_double(samples[k].t) << ','
                  << format_double(residuals[k]) << '\n';
        }
        std::cout << "mm_audit " << (mm.all() ? "pass" : "fail") << '\n';
        return mm.all() ? 0 : 1;
    });
}

int cmd_sweep(const std::string& scenario_id, const std::string& out_dir,
              std::vector<std::size_t> levels) {
    return guarded([&] {
        if (levels.empty()) levels = {512, 1024, 2048};
        (void)scenario_config(scenario_id);  // validate id up front

        std::vector<ConvergenceRow> rows(levels.size());
        std::vector<std::string> errors(levels.size());
        const std::size_t cap = std::min(thread_cap(), levels.size());
        std::vector<std::thread> pool;
        std::size_t next = 0;
        std::mutex mu;
        for (std::size_t w = 0; w < cap; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t i;
                    {
                        std::lock_guard<std::mutex> lock(mu);
                        if (next >= levels.size()) return;
                        i = next++;
                    }
                    try {
                        const BuiltRun built = build_run(
                            scenario_config(scenario_id, levels[i]));
                        const SimulationResult res = run_built(built);
                        rows[i] = {levels[i], built.solver.dt,
                                   res.exit ? res.exit->t_star
                                            : std::nan(""),
                                   res.ledger.back().l2};
                    } catch (const std::exception& e) {
                        errors[i] = e.what();
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
        for (const auto& e : errors)
            if (!e.empty()) throw NumericError("sweep level failed: " + e);

        const fs::path root(out_dir);
        fs::create_directories(root);
        auto f = open_out(root / "sweep.csv");
        f << "n_cells,dt,t_star,final_l2\n";
        for (const auto& r : rows)
            f << r.n_cells << ',' << format_double(r.dt) << ','
              << format_double(r.t_star) << ',' << format_double(r.final_l2)
              << '\n';
        return 0;
    });
}

}  // namespace stefan
