// Acceptance gate: every headline claim, one pass/fail line each.
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "stefan/analysis.hpp"
#include "stefan/laminate.hpp"
#include "stefan/oracle.hpp"
#include "stefan/solver.hpp"

using namespace stefan;

namespace {

int failures = 0;

void report(int id, const std::string& what, bool ok,
            const std::string& detail) {
    std::printf("[%s] %d %s (%s)\n", ok ? "PASS" : "FAIL", id, what.c_str(),
                detail.c_str());
    if (!ok) ++failures;
}

TemperatureField sine_initial(const Grid1D& g, double amp) {
    std::vector<double> v(g.n_nodes());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = amp * std::sin(M_PI * g.node(i) / g.length());
    return TemperatureField(g, std::move(v));
}

SimulationResult baseline_run(const PhysicalParams& p, double u0,
                              double t_end, std::size_t n = 256) {
    const Grid1D g(n, p.L);
    const auto law = VelocityLaw::linear(5.0, p.theta_T);
    SolverConfig sc;
    sc.dt = g.spacing();
    sc.t_end = t_end;
    sc.snapshot_stride = 1;
    return run_simulation(g, p, law, sc, sine_initial(g, p.theta_c()), u0);
}

char buf[256];

void criterion_1_2_max_principle_and_monotonicity() {
    const PhysicalParams p = unit_params();  // theta_c = +1
    PhysicalParams m = p;
    m.theta_T = 1.0;
    m.theta_B = 2.0;  // theta_c = -1, mirrored
    const auto pos = baseline_run(p, 0.3, 4.0);
    const auto neg = baseline_run(m, 0.7, 4.0);
    const auto law = VelocityLaw::linear(5.0, p.theta_T);

    const auto mp_pos = check_max_principle(pos, p);
    const auto mp_neg = check_max_principle(neg, m);
    std::snprintf(buf, sizeof buf, "worst violation %.3e / %.3e",
                  mp_pos.margin, mp_neg.margin);
    report(1, "comparison band holds for both interface orientations",
           mp_pos.verdict == Verdict::pass && mp_neg.verdict == Verdict::pass,
           buf);

    const auto mono_pos = check_monotone_interface(pos, p);
    const auto mono_neg = check_monotone_interface(neg, m);
    std::snprintf(buf, sizeof buf, "worst backstep %.3e / %.3e",
                  mono_pos.margin, mono_neg.margin);
    report(2, "gated interface is monotone toward the exit on both sides",
           mono_pos.verdict == Verdict::pass &&
               mono_neg.verdict == Verdict::pass,
           buf);
}

void criterion_3_exit_time_cauchy() {
    bool ok = false;
    std::string detail = "study failed";
    try {
        const ReferenceStudy st =
            fine_grid_reference("exit-baseline", {512, 1024, 2048});
        const double t0 = st.rows[0].t_star, t1 = st.rows[1].t_star,
                     t2 = st.rows[2].t_star;
        const double gap01 = std::abs(t1 - t0), gap12 = std::abs(t2 - t1);
        const bool cauchy = gap01 >= 1.8 * gap12;
        const bool close = std::isfinite(st.t_star_extrapolated) &&
                           std::abs(t0 - st.t_star_extrapolated) <=
                               0.01 * std::abs(st.t_star_extrapolated);
        ok = cauchy && close;
        std::snprintf(buf, sizeof buf,
                      "gaps %.3e -> %.3e, t* = %.6f, extrapolate %.6f", gap01,
                      gap12, t0, st.t_star_extrapolated);
        detail = buf;
    } catch (const std::exception& e) {
        detail = e.what();
    }
    report(3, "exit time is Cauchy under grid refinement", ok, detail);
}

void criterion_4_l2_decay() {
    const PhysicalParams p = unit_params();
    const auto res = baseline_run(p, 0.3, 6.0);
    const auto rep = check_l2_decay(res, p);
    const double target = p.K * M_PI * M_PI / (p.gamma * p.rho0 * p.L * p.L);
    const bool ok = rep.verdict == Verdict::pass &&
                    std::abs(rep.worst_t - target) <= 0.05 * target;
    std::snprintf(buf, sizeof buf, "fitted rate %.4f vs %.4f", rep.worst_t,
                  target);
    report(4, "post-exit L2 norm decays at the first Dirichlet rate", ok, buf);
}

void criterion_5_stiff_kinetics() {
    bool ok = true;
    double prev = 1e300;
    std::string gaps;
    try {
        for (double k : {10.0, 100.0, 1000.0}) {
            RunConfig cfg = scenario_config("stiff-kinetics");
            cfg.set("law.k", std::to_string(k));
            const BuiltRun built = build_run(cfg);
            const SimulationResult res =
                run_simulation(built.grid, built.params, built.law,
                               built.solver,
                               TemperatureField(built.grid, built.theta0),
                               built.u0);
            const NeumannSolution sol = solve_neumann(built.params, built.u0);
            const double horizon = sol.validity_horizon(built.params.L);
            double sup = 0.0;
            for (const auto& s : res.trajectory.samples()) {
                if (s.t > horizon) break;
                sup = std::max(sup,
                               std::abs(s.u - sol.interface_position(s.t)));
            }
            std::snprintf(buf, sizeof buf, " k=%g:%.3e", k, sup);
            gaps += buf;
            if (!(sup < prev)) ok = false;
            prev = sup;
        }
    } catch (const std::exception& e) {
        ok = false;
        gaps = e.what();
    }
    report(5, "stiff kinetics approach the classical similarity front", ok,
           gaps);
}

ManufacturedCase decaying_sine(double c) {
    ManufacturedCase mc;
    mc.theta = [](double s, double t) {
        return std::exp(-t) * std::sin(M_PI * s);
    };
    mc.theta_t = [](double s, double t) {
        return -std::exp(-t) * std::sin(M_PI * s);
    };
    mc.theta_ss = [](double s, double t) {
        return -M_PI * M_PI * std::exp(-t) * std::sin(M_PI * s);
    };
    mc.u = [c](double t) { return 0.3 + c * t; };
    mc.u_dot = [c](double) { return c; };
    return mc;
}

void criterion_6_manufactured_and_energy() {
    const PhysicalParams p = unit_params();
    const ManufacturedCase mc = decaying_sine(0.1);

    std::vector<double> errs;
    for (std::size_t n : {64u, 128u, 256u})
        errs.push_back(manufactured_l2_error(
            mc, p, n, 1.0 / static_cast<double>(n), 1.0,
            DiffusionScheme::crank_nicolson));
    const double sp01 = std::log2(errs[0] / errs[1]);
    const double sp12 = std::log2(errs[1] / errs[2]);

    const double be1 = manufactured_l2_error(mc, p, 512, 0.04, 1.0,
                                             DiffusionScheme::backward_euler);
    const double be2 = manufactured_l2_error(mc, p, 512, 0.02, 1.0,
                                             DiffusionScheme::backward_euler);
    const double cn1 = manufactured_l2_error(mc, p, 512, 0.04, 1.0,
                                             DiffusionScheme::crank_nicolson);
    const double cn2 = manufactured_l2_error(mc, p, 512, 0.02, 1.0,
                                             DiffusionScheme::crank_nicolson);
    const double be_order = std::log2(be1 / be2);
    const double cn_order = std::log2(cn1 / cn2);

    const auto res = baseline_run(p, 0.3, 2.0, 128);
    double worst = 0.0;
    for (const auto& row : res.ledger)
        worst = std::max(worst, std::abs(row.residual));

    const bool ok = sp01 >= 1.9 && sp12 >= 1.9 && be_order >= 0.9 &&
                    cn_order >= 1.9 && worst <= 1e-12 * res.energy_scale;
    std::snprintf(buf, sizeof buf,
                  "spatial %.2f/%.2f, BE %.2f, CN %.2f, ledger %.2e rel",
                  sp01, sp12, be_order, cn_order, worst / res.energy_scale);
    report(6, "manufactured orders met and energy ledger closes", ok, buf);
}

void criterion_7_mollified_gap() {
    const Grid1D g(128, 1.0);
    const PhysicalParams p = unit_params();
    const auto law = VelocityLaw::linear(5.0, p.theta_T);
    const TemperatureField theta0 = sine_initial(g, p.theta_c());
    SolverConfig sc;
    sc.dt = g.spacing();
    sc.t_end = 0.5;
    sc.snapshot_stride = 4;
    const auto sharp = run_simulation(g, p, law, sc, theta0, 0.3);

    bool ok = true;
    double prev = 1e300;
    std::string detail;
    for (double mult : {8.0, 4.0, 2.0}) {
        sc.source_mode = SourceMode::mollified;
        sc.epsilon = mult * g.spacing();
        const auto moll = run_simulation(g, p, law, sc, theta0, 0.3);
        double acc = 0.0;
        for (std::size_t k = 0; k < sharp.snapshots.size(); ++k) {
            const auto& a = sharp.snapshots[k].values;
            const auto& b = moll.snapshots[k].values;
            for (std::size_t i = 0; i < a.size(); ++i)
                acc += (a[i] - b[i]) * (a[i] - b[i]) * g.spacing();
        }
        const double gap = std::sqrt(acc);
        std::snprintf(buf, sizeof buf, " eps=%gds:%.3e", mult, gap);
        detail += buf;
        if (!(gap < prev)) ok = false;
        prev = gap;
    }
    report(7, "mollified dynamics converge to the sharp deposition", ok,
           detail);
}

void criterion_8_laminate() {
    bool ok = true;
    std::string detail = "1000 specs";
    std::mt19937_64 aux(99);
    std::uniform_real_distribution<double> pos(0.0, 1.0);
    InterfaceTrajectory tr;
    for (int k = 0; k <= 20; ++k)
        tr.push({0.05 * k, 0.2 + 0.01 * k, 0.0, 0.2, true});

    for (std::uint64_t seed = 1; seed <= 1000 && ok; ++seed) {
        const LaminateSpec spec = random_compatible_spec(seed);
        // round trip through the rank-one extraction
        const Mat3 mean = barycenter(spec.A, spec.B, spec.lambda);
        const Mat3 back = add(identity3(), outer(spec.a, spec.n));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (std::abs(mean[i][j] - back[i][j]) > 1e-10) ok = false;
        // continuity of the reconstructed deformation
        const auto snaps = reconstruct_deformation(tr, spec);
        for (const auto& s : snaps)
            if (s.continuity_defect > 1e-12) ok = false;
        // Lipschitz bound on sampled pairs
        const double lip = 1.0 + norm(spec.a);
        for (int trial = 0; trial < 10; ++trial) {
            const Vec3 x{pos(aux), pos(aux), pos(aux)};
            const Vec3 y{pos(aux), pos(aux), pos(aux)};
            const Vec3 fx = deform_point(snaps[5], spec, x);
            const Vec3 fy = deform_point(snaps[5], spec, y);
            const Vec3 dxy{x[0] - y[0], x[1] - y[1], x[2] - y[2]};
            const Vec3 dfxy{fx[0] - fy[0], fx[1] - fy[1], fx[2] - fy[2]};
            if (norm(dfxy) > lip * norm(dxy) + 1e-12) ok = false;
        }
        if (!moving_mask_audit(tr, spec, 0.2 + 1e-9).all()) ok = false;
        if (!ok) {
            std::snprintf(buf, sizeof buf, "spec seed %llu violated a bound",
                          static_cast<unsigned long long>(seed));
            detail = buf;
        }
    }

    // entropy-source residual is first order in the sampling interval
    const Grid1D g(2048, 1.0);
    auto max_resid = [&](double dt) {
        InterfaceTrajectory t2;
        for (double t = 0.0; t <= 1.0 + 1e-12; t += dt)
            t2.push({t, 0.3 + 0.1 * t, 0.0, 0.1, true});
        double worst = 0.0;
        for (double r : entropy_source_residuals(
                 t2, g, [](double s) { return std::sin(M_PI * s); }))
            worst = std::max(worst, std::abs(r));
        return worst;
    };
    const double ratio = max_resid(0.05) / max_resid(0.025);
    if (!(ratio > 1.7 && ratio < 2.3)) {
        ok = false;
        std::snprintf(buf, sizeof buf, "entropy halving ratio %.2f", ratio);
        detail = buf;
    } else if (ok) {
        std::snprintf(buf, sizeof buf,
                      "1000 specs, entropy halving ratio %.2f", ratio);
        detail = buf;
    }
    report(8, "laminate geometry: compatibility, continuity, audit, entropy",
           ok, detail);
}

void criterion_9_sign_contract() {
    const double theta_T = 2.0;
    const auto linear = VelocityLaw::linear(5.0, theta_T);
    const auto sat = VelocityLaw::saturated(1.0, 0.25, theta_T);
    const auto tab = VelocityLaw::table({1.0, 1.5, 2.0, 2.5, 3.0},
                                        {1.0, 0.5, 0.0, -0.5, -1.0}, theta_T);
    bool ok = true;
    for (const auto* law : {&linear, &sat, &tab})
        if (!law->validate_sign_condition(1001, 1.0).pass) ok = false;

    bool rejected = false;
    try {
        (void)VelocityLaw::table({1.0, 1.5, 2.0}, {-0.05, -0.1, -0.2},
                                 theta_T);
    } catch (const SignConditionViolated&) {
        rejected = true;
    }
    if (!rejected) ok = false;
    report(9, "sign contract holds for shipped laws; violators are rejected",
           ok, rejected ? "1001-sample scan, bad table rejected"
                        : "bad table was accepted");
}

}  // namespace

int main() {
    criterion_1_2_max_principle_and_monotonicity();
    criterion_3_exit_time_cauchy();
    criterion_4_l2_decay();
    criterion_5_stiff_kinetics();
    criterion_6_manufactured_and_energy();
    criterion_7_mollified_gap();
    criterion_8_laminate();
    criterion_9_sign_contract();
    if (failures) {
        std::printf("ACCEPTANCE: %d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("ACCEPTANCE: all criteria passed\n");
    return 0;
}
