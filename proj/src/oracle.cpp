#include "stefan/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace stefan {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

double NeumannSolution::interface_position(double t) const {
    return u0 + direction * 2.0 * lambda * std::sqrt(D * std::max(t, 0.0));
}

double NeumannSolution::interface_velocity(double t) const {
    return direction * lambda * std::sqrt(D / t);
}

double NeumannSolution::temperature(double s, double t) const {
    if (t <= 0.0) return 0.0;
    // normalize to the rightward-moving, theta_c > 0 frame
    const double sign = direction;
    const double tc = sign * theta_c;
    const double fb = sign * far_behind;
    const double fa = sign * far_ahead;
    const double eta = sign * (s - u0) / (2.0 * std::sqrt(D * t));
    double value;
    if (eta <= lambda)
        value = fb + (tc - fb) * (1.0 + std::erf(eta)) / (1.0 + std::erf(lambda));
    else
        value = fa + (tc - fa) * std::erfc(eta) / std::erfc(lambda);
    return sign * value;
}

double NeumannSolution::validity_horizon(double L) const {
    const double reach = 0.5 * std::min(u0, L - u0);
    return reach * reach / D;
}

double neumann_equation(double lambda, const PhysicalParams& params,
                        double far_behind, double far_ahead) {
    const double tc = params.theta_c();
    const double sign = tc >= 0.0 ? 1.0 : -1.0;
    const double tcn = sign * tc;
    const double fb = sign * far_behind;
    const double fa = sign * far_ahead;
    const double cap = params.gamma * params.rho0;
    const double sqrt_pi = std::sqrt(M_PI);
    return params.alpha * lambda * std::exp(lambda * lambda) * sqrt_pi -
           cap * ((tcn - fb) / (1.0 + std::erf(lambda)) +
                  (tcn - fa) / std::erfc(lambda));
}

NeumannSolution solve_neumann(const PhysicalParams& params, double u0,
                              double far_behind, double far_ahead) {
    const double tc = params.theta_c();
    if (tc == 0.0)
        throw NoBracket("degenerate theta_c = 0: no melting-front similarity solution");
    auto G = [&](double lam) {
        return neumann_equation(lam, params, far_behind, far_ahead);
    };

    // bracket scan; e^{lambda^2} overflows past ~26.5 and erfc underflows
    // well before that matters
    const double lo_scan = -8.0, hi_scan = 26.0;
    const int n_scan = 34000;
    double a = kNaN, b = kNaN, ga = 0.0;
    double prev_x = lo_scan, prev_g = G(lo_scan);
    for (int i = 1; i <= n_scan; ++i) {
        const double x = lo_scan + (hi_scan - lo_scan) * i / n_scan;
        const double g = G(x);
        if (std::isfinite(prev_g) && std::isfinite(g) &&
            ((prev_g < 0.0 && g > 0.0) || (prev_g > 0.0 && g < 0.0))) {
            a = prev_x;
            b = x;
            ga = prev_g;
            break;
        }
        prev_x = x;
        prev_g = g;
    }
    if (!std::isfinite(a))
        throw NoBracket("no sign change for the interface-growth balance "
                        "(Stefan number too large?)");

    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        const double gm = G(mid);
        if ((ga < 0.0) == (gm < 0.0)) {
            a = mid;
            ga = gm;
        } else {
            b = mid;
        }
        if (b - a <= 4.0 * std::numeric_limits<double>::epsilon() *
                         std::max(1.0, std::abs(a)))
            break;
    }
    const double lambda = 0.5 * (a + b);

    NeumannSolution sol;
    sol.lambda = lambda;
    sol.D = params.diffusivity();
    sol.u0 = u0;
    sol.direction = tc > 0.0 ? 1.0 : -1.0;
    sol.theta_c = tc;
    sol.far_behind = far_behind;
    sol.far_ahead = far_ahead;
    sol.residual = std::abs(G(lambda));
    return sol;
}

NodalForcing manufactured_forcing(const ManufacturedCase& mc,
                                  const PhysicalParams& params,
                                  DiffusionScheme /*scheme*/) {
    return [mc, params](const Grid1D& grid, double t, std::vector<double>& f) {
        const double cap = params.gamma * params.rho0;
        const std::size_t n = grid.n_nodes();
        f.assign(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double s = grid.node(i);
            f[i] = cap * mc.theta_t(s, t) - params.K * mc.theta_ss(s, t);
        }
        // cancel the solver's own latent deposit: the solver evaluates its
        // deposit at the same scheme-centered time t that arrives here
        if (params.alpha != 0.0) {
            const double u = std::clamp(mc.u(t), 0.0, grid.length());
            const double rate = params.alpha * mc.u_dot(t);
            const auto w = sharp_deposit_weights(grid, u);
            f[w.i] -= rate * w.w_lo;
            f[w.i + 1] -= rate * w.w_hi;
            if (f[0] != 0.0) { f[1] += f[0]; f[0] = 0.0; }
            if (f[n - 1] != 0.0) { f[n - 2] += f[n - 1]; f[n - 1] = 0.0; }
        }
    };
}

double manufactured_l2_error(const ManufacturedCase& mc,
                             const PhysicalParams& params, std::size_t n_cells,
                             double dt, double t_end, DiffusionScheme scheme) {
    Grid1D grid(n_cells, params.L);
    std::vector<double> v(grid.n_nodes());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = mc.theta(grid.node(i), 0.0);
    v.front() = 0.0;
    v.back() = 0.0;
    TemperatureField theta0(grid, std::move(v));

    SolverConfig sc;
    sc.dt = dt;
    sc.t_end = t_end;
    sc.diffusion = scheme;
    sc.prescribed_interface = mc.u;
    sc.forcing = manufactured_forcing(mc, params, scheme);
    sc.snapshot_stride = 1u << 30;  // only first/last snapshots matter

    StefanSolver solver(grid, params, VelocityLaw::linear(1.0, params.theta_T), sc);
    const SimulationResult res = solver.run(theta0, mc.u(0.0));

    const auto& snap = res.snapshots.back();
    const double ds = grid.spacing();
    double acc = 0.0;
    std::vector<double> err(grid.n_nodes());
    for (std::size_t i = 0; i < err.size(); ++i)
        err[i] = snap.values[i] - mc.theta(grid.node(i), snap.t);
    for (std::size_t i = 0; i + 1 < err.size(); ++i)
        acc += 0.5 * (err[i] * err[i] + err[i + 1] * err[i + 1]) * ds;
    return std::sqrt(acc);
}

namespace {

const std::map<std::string, std::string>& catalog() {
    static const std::map<std::string, std::string> entries = {
        {"exit-baseline", R"(# martensite-growing exit scenario, theta_c = 1
params.rho0 = 1
params.gamma = 1
params.alpha = 1
params.K = 1
params.theta_T = 2
params.theta_B = 1
params.L = 1
grid.n_cells = 512
solver.dt_over_ds = 1
solver.t_end = 6
law.kind = linear
law.k = 5
initial.kind = sine
initial.u0 = 0.3
)"},
        {"mirror-baseline", R"(# martensite-shrinking mirror of exit-baseline, theta_c = -1
params.rho0 = 1
params.gamma = 1
params.alpha = 1
params.K = 1
params.theta_T = 1
params.theta_B = 2
params.L = 1
grid.n_cells = 512
solver.dt_over_ds = 1
solver.t_end = 6
law.kind = linear
law.k = 5
initial.kind = sine
initial.u0 = 0.7
)"},
        {"equilibrium", R"(# theta_B = theta_T: fixed point, interface never moves
params.rho0 = 1
params.gamma = 1
params.alpha = 1
params.K = 1
params.theta_T = 1
params.theta_B = 1
params.L = 1
grid.n_cells = 512
solver.dt_over_ds = 1
solver.t_end = 1
law.kind = linear
law.k = 5
initial.kind = constant
initial.value = 0
initial.u0 = 0.5
)"},
        {"stiff-kinetics", R"(# supercooled start, Stefan number 0.5; k is swept by the oracle command
params.rho0 = 1
params.gamma = 1
params.alpha = 1
params.K = 1
params.theta_T = 1
params.theta_B = 0.5
params.L = 1
grid.n_cells = 256
solver.dt = 2e-6
solver.t_end = 0.06
law.kind = linear
law.k = 10
initial.kind = constant
initial.value = 0
initial.u0 = 0.5
)"},
    };
    return entries;
}

}  // namespace

std::vector<std::string> scenario_names() {
    std::vector<std::string> names;
    for (const auto& [k, v] : catalog()) names.push_back(k);
    return names;
}

RunConfig scenario_config(const std::string& id) {
    auto it = catalog().find(id);
    if (it == catalog().end()) throw UnknownScenario("unknown scenario: " + id);
    return RunConfig::parse_string(it->second);
}

RunConfig scenario_config(const std::string& id, std::size_t n_cells) {
    RunConfig cfg = scenario_config(id);
    cfg.set("grid.n_cells", std::to_string(n_cells));
    return cfg;
}

ReferenceStudy fine_grid_reference(const std::string& scenario_id,
                                   const std::vector<std::size_t>& levels) {
    ReferenceStudy study;
    study.t_star_extrapolated = kNaN;
    study.observed_order = kNaN;
    for (std::size_t n : levels) {
        const RunConfig cfg = scenario_config(scenario_id, n);
        BuiltRun built = build_run(cfg);
        TemperatureField theta0(built.grid, built.theta0);
        const SimulationResult res =
            run_simulation(built.grid, built.params, built.law, built.solver,
                           theta0, built.u0);
        ConvergenceRow row;
        row.n_cells = n;
        row.dt = built.solver.dt;
        row.t_star = res.exit ? res.exit->t_star : kNaN;
        row.final_l2 = res.ledger.back().l2;
        study.rows.push_back(row);
    }

    // self-convergence of t* when at least three levels exit
    std::vector<double> ts;
    for (const auto& r : study.rows)
        if (std::isfinite(r.t_star)) ts.push_back(r.t_star);
    if (ts.size() == study.rows.size() && ts.size() >= 3) {
        std::vector<double> gaps;
        for (std::size_t i = 0; i + 1 < ts.size(); ++i)
            gaps.push_back(std::abs(ts[i + 1] - ts[i]));
        for (std::size_t i = 0; i + 1 < gaps.size(); ++i)
            if (!(gaps[i + 1] < gaps[i]))
                throw NonConverging("t* gaps do not shrink between levels");
        const double ratio = gaps[gaps.size() - 2] / gaps.back();
        study.observed_order = std::log2(ratio);
        const double p = study.observed_order;
        const double d_last = ts[ts.size() - 1] - ts[ts.size() - 2];
        study.t_star_extrapolated =
            ts.back() + d_last / (std::pow(2.0, p) - 1.0);
    }
    return study;
}

}  // namespace stefan
