#include "stefan/solver.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "stefan/tridiag.hpp"

namespace stefan {

void SolverConfig::validate() const {
    if (!(dt > 0.0)) throw NonPositiveParameter("solver.dt");
    if (!(t_end > 0.0)) throw NonPositiveParameter("solver.t_end");
    if (coupling == CouplingScheme::picard) {
        if (picard_max_iter < 1) throw ConfigError("solver.picard_max_iter must be >= 1");
        if (!(picard_tol > 0.0)) throw NonPositiveParameter("solver.picard_tol");
    }
    if (source_mode == SourceMode::mollified && !(epsilon > 0.0))
        throw NonPositiveParameter("solver.epsilon");
}

SharpDeposit sharp_deposit_weights(const Grid1D& grid, double u) {
    const double ds = grid.spacing();
    double x = std::clamp(u, 0.0, grid.length());
    auto i = static_cast<std::size_t>(x / ds);
    if (i >= grid.n_cells()) i = grid.n_cells() - 1;
    const double xi = (x - grid.node(i)) / ds;
    return SharpDeposit{i, (1.0 - xi) / ds, xi / ds};
}

StefanSolver::StefanSolver(const Grid1D& grid, PhysicalParams params,
                           VelocityLaw law, SolverConfig config)
    : grid_(&grid), params_(params), law_(std::move(law)),
      config_(std::move(config)) {
    config_.validate();
    if (config_.source_mode == SourceMode::mollified &&
        config_.epsilon < 2.0 * grid.spacing())
        throw UnresolvableWidth("solver.epsilon below 2*ds");
}

double StefanSolver::gated_velocity(const TemperatureField& field,
                                    const InterfaceState& state) const {
    if (!state.active) return 0.0;
    const double theta_bar = interpolate_at_interface(field, state.position);
    return law_.eval(theta_bar + params_.theta_B);
}

std::vector<double> StefanSolver::source_density(
    const TemperatureField& field, double u_old, double u_new, bool active,
    double v_interface, double* deposited) const {
    const std::size_t n = grid_->n_nodes();
    std::vector<double> f(n, 0.0);
    *deposited = 0.0;
    const double dt = config_.dt;
    const double du = u_new - u_old;
    // BE centers the step at t^{n+1}, CN at the midpoint; the deposit
    // position follows so that scheme order is preserved
    const double center = config_.diffusion == DiffusionScheme::crank_nicolson
                              ? 0.5 * (u_old + u_new)
                              : u_new;
    if (config_.source_mode == SourceMode::sharp) {
        if (du != 0.0) {
            const auto w = sharp_deposit_weights(*grid_, center);
            const double rate = params_.alpha * du / dt;
            f[w.i] += rate * w.w_lo;
            f[w.i + 1] += rate * w.w_hi;
            // Dirichlet rows are not solved; fold their weight inward
            if (f[0] != 0.0) { f[1] += f[0]; f[0] = 0.0; }
            if (f[n - 1] != 0.0) { f[n - 2] += f[n - 1]; f[n - 1] = 0.0; }
            *deposited = params_.alpha * du;
        }
    } else {
        MollifiedDirac d{config_.epsilon, std::clamp(center, 0.0, grid_->length()),
                         config_.profile};
        if (config_.velocity_argument == VelocityArgument::interface) {
            if (du != 0.0) {
                const auto w = evaluate_on_grid(d, *grid_);
                const double rate = params_.alpha * du / dt;
                for (std::size_t i = 0; i < n; ++i) f[i] = rate * w[i];
                *deposited = params_.alpha * du;
            }
        } else if (active) {
            // proof-variant source: v evaluated pointwise under the kernel
            const auto w = evaluate_on_grid(d, *grid_);
            const double ds = grid_->spacing();
            double heat = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (w[i] == 0.0) continue;
                const double v = law_.eval(field[i] + params_.theta_B);
                f[i] = params_.alpha * w[i] * v;
                heat += f[i] * ds;
            }
            *deposited = heat * dt;
        }
        (void)v_interface;
    }
    return f;
}

std::vector<double> StefanSolver::diffuse(const std::vector<double>& old_values,
                                          const std::vector<double>& source,
                                          double t_new, StepDiagnostics* diag) const {
    const std::size_t nn = grid_->n_nodes();
    const std::size_t m = nn - 2;  // interior unknowns
    const double ds = grid_->spacing();
    const double dt = config_.dt;
    const double cap = params_.gamma * params_.rho0;
    const double r = params_.K * dt / (cap * ds * ds);
    const bool cn = config_.diffusion == DiffusionScheme::crank_nicolson;

    std::vector<double> f = source;
    if (config_.forcing) {
        std::vector<double> ext(nn, 0.0);
        const double t_c = cn ? t_new - 0.5 * dt : t_new;
        config_.forcing(*grid_, t_c, ext);
        double heat = 0.0;
        for (std::size_t i = 1; i + 1 < nn; ++i) {
            f[i] += ext[i];
            heat += ext[i] * ds;
        }
        if (diag) diag->forcing_heat += heat * dt;
    }

    std::vector<double> a(m), b(m), c(m), d(m);
    const double diag_impl = cn ? 1.0 + r : 1.0 + 2.0 * r;
    const double off_impl = cn ? -0.5 * r : -r;
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t i = j + 1;
        a[j] = off_impl;
        b[j] = diag_impl;
        c[j] = off_impl;
        double rhs = old_values[i] + dt * f[i] / cap;
        if (cn)
            rhs += 0.5 * r *
                   (old_values[i - 1] - 2.0 * old_values[i] + old_values[i + 1]);
        d[j] = rhs;
    }
    const std::vector<double> x = solve_tridiagonal(a, b, c, d);
    std::vector<double> out(nn, 0.0);
    for (std::size_t j = 0; j < m; ++j) out[j + 1] = x[j];

    if (diag) {
        double e1 = out[1], en = out[nn - 2];
        if (cn) {
            e1 = 0.5 * (e1 + old_values[1]);
            en = 0.5 * (en + old_values[nn - 2]);
        }
        diag->flux_in = -params_.K * (e1 + en) / ds;
    }
    return out;
}

void StefanSolver::advance(TemperatureField& field, InterfaceState& state,
                           StepDiagnostics* diag) const {
    const double dt = config_.dt;
    const double L = grid_->length();
    const double t_new = state.time + dt;
    const double u_old = state.position;

    double u_new = u_old;
    double v_used = 0.0;
    std::vector<double> new_values;
    double deposited = 0.0;

    if (config_.prescribed_interface) {
        u_new = std::clamp(config_.prescribed_interface(t_new), 0.0, L);
        v_used = (u_new - u_old) / dt;
        const auto src =
            source_density(field, u_old, u_new, state.active, v_used, &deposited);
        new_values = diffuse(field.values(), src, t_new, diag);
    } else if (config_.coupling == CouplingScheme::imex) {
        v_used = gated_velocity(field, state);
        u_new = std::clamp(u_old + dt * v_used, 0.0, L);
        const auto src =
            source_density(field, u_old, u_new, state.active, v_used, &deposited);
        new_values = diffuse(field.values(), src, t_new, diag);
    } else {
        // Picard fixed point on (theta^{n+1}, u^{n+1}) with trapezoidal
        // interface update
        const double v_old = gated_velocity(field, state);
        double u_it = u_old;
        TemperatureField iter = field;
        bool converged = false;
        StepDiagnostics local;
        for (int it = 0; it < config_.picard_max_iter; ++it) {
            InterfaceState probe{u_it, state.active && u_it > 0.0 && u_it < L, t_new};
            const double v_new = gated_velocity(iter, probe);
            const double u_next =
                state.active ? std::clamp(u_old + 0.5 * dt * (v_old + v_new), 0.0, L)
                             : u_old;
            local = StepDiagnostics{};
            double dep = 0.0;
            const auto src =
                source_density(iter, u_old, u_next, state.active, v_new, &dep);
            auto vals = diffuse(field.values(), src, t_new, &local);
            double delta = std::abs(u_next - u_it);
            for (std::size_t i = 0; i < vals.size(); ++i)
                delta = std::max(delta, std::abs(vals[i] - iter[i]));
            iter.assign_interior(vals);
            u_it = u_next;
            v_used = 0.5 * (v_old + v_new);
            deposited = dep;
            if (delta < config_.picard_tol) {
                converged = true;
                break;
            }
        }
        if (!converged)
            throw PicardDivergence("picard iteration did not converge", -1);
        if (diag) {
            diag->flux_in = local.flux_in;
            diag->forcing_heat += local.forcing_heat;
        }
        u_new = u_it;
        new_values = iter.values();
    }

    field.assign_interior(new_values);
    state.position = u_new;
    state.time = t_new;
    if (state.active && (u_new <= 0.0 || u_new >= L)) state.active = false;
    if (diag) diag->deposited += deposited;

    if (!field.all_finite() || !std::isfinite(u_new))
        throw NonFiniteState("non-finite state after step", -1);
}

void StefanSolver::step(TemperatureField& field, InterfaceState& state) const {
    advance(field, state, nullptr);
}

SimulationResult StefanSolver::run(const TemperatureField& theta0, double u0) const {
    const double L = grid_->length();
    if (!config_.prescribed_interface && !(u0 > 0.0 && u0 < L))
        throw InvalidInitialInterface("u0 must lie strictly inside (0, L)");

    // transport guard: explicit interface stepping wants dt * v <= ds
    {
        double cap = 0.0;
        if (auto vm = law_.v_max())
            cap = *vm;
        else
            cap = law_.max_speed_over(params_.theta_B, params_.theta_T);
        if (cap * config_.dt > grid_->spacing())
            std::cerr << "[stefan] warning: dt * v_max = " << cap * config_.dt
                      << " exceeds ds = " << grid_->spacing()
                      << "; interface may cross cells within a step\n";
    }

    const double dt = config_.dt;
    const auto steps = static_cast<long>(std::ceil(config_.t_end / dt - 1e-9));
    const std::size_t stride =
        config_.snapshot_stride > 0
            ? config_.snapshot_stride
            : std::max<std::size_t>(1, static_cast<std::size_t>(steps) / 400);

    SimulationResult res;
    res.energy_scale =
        params_.gamma * params_.rho0 * L *
            std::max({std::abs(params_.theta_c()), theta0.max(), -theta0.min(), 1e-30}) +
        params_.alpha * L;

    TemperatureField field = theta0;
    InterfaceState state{std::clamp(u0, 0.0, L), u0 > 0.0 && u0 < L, 0.0};

    const double cap = params_.gamma * params_.rho0;
    double stored = cap * field.integral();
    double flux_cum = 0.0, latent_cum = 0.0;

    res.snapshots.push_back({0.0, field.values()});
    res.trajectory.push({0.0, state.position,
                         interpolate_at_interface(field, state.position),
                         gated_velocity(field, state), state.active});
    res.ledger.push_back({0.0, stored, 0.0, 0.0, 0.0, field.l2_norm()});

    for (long k = 0; k < steps; ++k) {
        StepDiagnostics diag;
        const double u_before = state.position;
        const bool was_active = state.active;
        const double v_before = gated_velocity(field, state);
        try {
            advance(field, state, &diag);
        } catch (PicardDivergence& e) {
            throw PicardDivergence(std::string(e.what()) + " at step " +
                                       std::to_string(k),
                                   k);
        } catch (NonFiniteState& e) {
            throw NonFiniteState(std::string(e.what()) + " at step " +
                                     std::to_string(k),
                                 k);
        }
        const double t = state.time;

        if (was_active && !state.active && !res.exit) {
            // sub-step exit time by linear interpolation within the step
            double t_star = t;
            const ExitRecord::Side side = state.position <= 0.0
                                              ? ExitRecord::Side::left
                                              : ExitRecord::Side::right;
            if (!config_.prescribed_interface && v_before != 0.0) {
                const double target = side == ExitRecord::Side::left ? 0.0 : L;
                const double frac = (target - u_before) / (dt * v_before);
                if (frac > 0.0 && frac <= 1.0) t_star = t - dt + frac * dt;
            }
            res.exit = ExitRecord{t_star, side};
        }

        const double stored_new = cap * field.integral();
        flux_cum += diag.flux_in * dt;
        latent_cum += diag.deposited;
        const double residual = (stored_new - stored) - diag.flux_in * dt -
                                diag.deposited - diag.forcing_heat;
        stored = stored_new;
        res.ledger.push_back({t, stored, flux_cum, latent_cum, residual,
                              field.l2_norm()});
        res.trajectory.push({t, state.position,
                             interpolate_at_interface(field, state.position),
                             gated_velocity(field, state), state.active});
        if ((k + 1) % static_cast<long>(stride) == 0 || k + 1 == steps)
            res.snapshots.push_back({t, field.values()});
    }
    return res;
}

SimulationResult run_simulation(const Grid1D& grid, const PhysicalParams& params,
                                const VelocityLaw& law, const SolverConfig& config,
                                const TemperatureField& theta0, double u0) {
    return StefanSolver(grid, params, law, config).run(theta0, u0);
}

}  // namespace stefan
