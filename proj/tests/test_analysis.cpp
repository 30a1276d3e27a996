#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "stefan/analysis.hpp"

using namespace stefan;

namespace {

struct Baseline {
    Grid1D grid{256, 1.0};
    PhysicalParams params = unit_params();  // theta_c = 1
    VelocityLaw law = VelocityLaw::linear(5.0, 2.0);
    SimulationResult result;

    explicit Baseline(double t_end = 4.0) {
        std::vector<double> v(grid.n_nodes());
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = std::sin(M_PI * grid.node(i));
        SolverConfig sc;
        sc.dt = grid.spacing();
        sc.t_end = t_end;
        sc.snapshot_stride = 1;
        result = run_simulation(grid, params, law, sc,
                                TemperatureField(grid, std::move(v)), 0.3);
    }
};

const Baseline& baseline() {
    static const Baseline b;
    return b;
}

}  // namespace

TEST_CASE("baseline run passes every checker") {
    const Baseline& b = baseline();
    const auto reports = run_all_checks(b.result, b.params, b.law);
    REQUIRE(reports.size() == 6);
    for (const auto& r : reports) {
        INFO(r.id, ": ", to_string(r.verdict), " margin ", r.margin, " ",
             r.note);
        CHECK(r.verdict == Verdict::pass);
    }
}

TEST_CASE("decay rate matches the first Dirichlet eigenvalue") {
    const Baseline& b = baseline();
    const auto rep = check_l2_decay(b.result, b.params);
    CHECK(rep.verdict == Verdict::pass);
    // fitted rate is stored in worst_t; target pi^2 for unit parameters
    CHECK(rep.worst_t ==
          doctest::Approx(M_PI * M_PI).epsilon(0.05));
}

TEST_CASE("hypothesis violations are reported, not judged") {
    const Baseline& b = baseline();
    SimulationResult doctored = b.result;
    for (double& v : doctored.snapshots.front().values) v *= 2.0;  // 2 theta_c
    CHECK(check_max_principle(doctored, b.params).verdict ==
          Verdict::hypothesis_not_met);
    CHECK(check_monotone_interface(doctored, b.params).verdict ==
          Verdict::hypothesis_not_met);
    CHECK(check_finite_exit(doctored, b.params, b.law).verdict ==
          Verdict::hypothesis_not_met);
}

TEST_CASE("theta_c = 0 is outside the finite-exit regime") {
    const Grid1D g(64, 1.0);
    PhysicalParams p = unit_params();
    p.theta_T = 1.0;  // theta_c = 0
    const auto law = VelocityLaw::linear(5.0, p.theta_T);
    SolverConfig sc;
    sc.dt = g.spacing();
    sc.t_end = 1.0;
    const auto res = run_simulation(g, p, law, sc, TemperatureField(g), 0.5);
    CHECK(check_finite_exit(res, p, law).verdict ==
          Verdict::hypothesis_not_met);
    // equilibrium still satisfies the band trivially
    const auto mp = check_max_principle(res, p);
    CHECK(mp.verdict == Verdict::pass);
    CHECK(mp.margin <= 0.0);
    CHECK(check_monotone_interface(res, p).verdict == Verdict::pass);
}

TEST_CASE("tampered trajectory fails monotonicity") {
    const Baseline& b = baseline();
    SimulationResult doctored;
    doctored.snapshots = b.result.snapshots;
    doctored.ledger = b.result.ledger;
    doctored.exit = b.result.exit;
    doctored.energy_scale = b.result.energy_scale;
    const auto& tr = b.result.trajectory.samples();
    std::size_t target = 5;  // somewhere the gate is still active
    while (target + 1 < tr.size() && !tr[target + 1].active) ++target;
    for (std::size_t k = 0; k < tr.size(); ++k) {
        TrajectorySample s = tr[k];
        if (k == target) s.u -= 0.05;  // injected backward step
        doctored.trajectory.push(s);
    }
    CHECK(check_monotone_interface(doctored, b.params).verdict ==
          Verdict::fail);
}

TEST_CASE("insufficient post-exit data is inconclusive") {
    const Baseline& b = baseline();
    REQUIRE(b.result.exit.has_value());
    SimulationResult truncated;
    truncated.energy_scale = b.result.energy_scale;
    truncated.exit = b.result.exit;
    const double t_star = b.result.exit->t_star;
    for (const auto& row : b.result.ledger) {
        if (row.t > t_star) break;
        truncated.ledger.push_back(row);
    }
    for (const auto& snap : b.result.snapshots) {
        if (snap.t > t_star) break;
        truncated.snapshots.push_back(snap);
    }
    for (const auto& s : b.result.trajectory.samples()) {
        if (s.t > t_star) break;
        truncated.trajectory.push(s);
    }
    CHECK(check_l2_decay(truncated, b.params).verdict ==
          Verdict::inconclusive);
}

TEST_CASE("no exit at all is inconclusive for decay") {
    const Baseline& b = baseline();
    SimulationResult no_exit = b.result;
    no_exit.exit.reset();
    CHECK(check_l2_decay(no_exit, b.params).verdict == Verdict::inconclusive);
}

TEST_CASE("energy balance flags a corrupted ledger") {
    const Baseline& b = baseline();
    CHECK(check_energy_balance(b.result, b.params).verdict == Verdict::pass);
    SimulationResult doctored = b.result;
    doctored.ledger[doctored.ledger.size() / 2].residual =
        1e-6 * doctored.energy_scale;
    CHECK(check_energy_balance(doctored, b.params).verdict == Verdict::fail);
}

TEST_CASE("speed bound uses the law's band maximum") {
    const Baseline& b = baseline();
    const auto rep = check_speed_bound(b.result, b.params, b.law);
    CHECK(rep.verdict == Verdict::pass);
    // the bound itself: linear k = 5 over [theta_B, theta_T] peaks at 5
    CHECK(b.law.max_speed_over(b.params.theta_B, b.params.theta_T) ==
          doctest::Approx(5.0));
}
