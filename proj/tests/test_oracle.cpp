#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "stefan/oracle.hpp"

using namespace stefan;

namespace {

// reference roots from an independent solver (frozen)
constexpr double kLambdaSupercooledSt05 = 0.6240258849137188;
constexpr double kLambdaSinglePhaseSt1 = 0.35783454667200715;

PhysicalParams supercooled_params() {
    PhysicalParams p = unit_params();
    p.theta_T = 1.0;
    p.theta_B = 0.5;  // theta_c = 0.5, Stefan number 0.5
    return p;
}

// independent root-finder: plain secant on the same balance
double secant_lambda(const PhysicalParams& p, double fb, double fa,
                     double x0, double x1) {
    double f0 = neumann_equation(x0, p, fb, fa);
    double f1 = neumann_equation(x1, p, fb, fa);
    for (int it = 0; it < 200; ++it) {
        const double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = neumann_equation(x1, p, fb, fa);
        if (std::abs(x1 - x0) < 1e-15) break;
    }
    return x1;
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

}  // namespace

TEST_CASE("Neumann root: bisection matches the frozen reference and secant") {
    const PhysicalParams p = supercooled_params();
    const NeumannSolution sol = solve_neumann(p, 0.5);
    CHECK(sol.residual <= 1e-12);
    CHECK(sol.lambda ==
          doctest::Approx(kLambdaSupercooledSt05).epsilon(1e-10));
    const double lam2 = secant_lambda(p, 0.0, 0.0, 0.3, 0.9);
    CHECK(std::abs(sol.lambda - lam2) <= 1e-10);
}

TEST_CASE("Neumann root: single-phase Stefan number 1") {
    PhysicalParams p = unit_params();  // theta_c = 1, alpha = 1 -> St = 1
    const double fa = p.theta_c();     // no jump ahead of the front
    const NeumannSolution sol = solve_neumann(p, 0.5, 0.0, fa);
    CHECK(sol.residual <= 1e-12);
    CHECK(sol.lambda ==
          doctest::Approx(kLambdaSinglePhaseSt1).epsilon(1e-10));
    const double lam2 = secant_lambda(p, 0.0, fa, 0.2, 0.6);
    CHECK(std::abs(sol.lambda - lam2) <= 1e-10);
}

TEST_CASE("Neumann: zero-latent-heat degenerate limit") {
    PhysicalParams p = supercooled_params();
    p.alpha = 0.0;
    const double fa = 1.5 * p.theta_c();  // superheated ahead: root exists
    const NeumannSolution sol = solve_neumann(p, 0.5, 0.0, fa);
    CHECK(sol.residual <= 1e-12);
    // with alpha = 0 the balance collapses to the pure-diffusion isotherm
    const double lhs = (sol.theta_c - 0.0) / (1.0 + std::erf(sol.lambda));
    const double rhs = (fa - sol.theta_c) / std::erfc(sol.lambda);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
}

TEST_CASE("Neumann: mirrored case is antisymmetric") {
    const PhysicalParams p = supercooled_params();
    PhysicalParams m = p;
    m.theta_T = 0.5;
    m.theta_B = 1.0;  // theta_c = -0.5
    const NeumannSolution a = solve_neumann(p, 0.5);
    const NeumannSolution b = solve_neumann(m, 0.5);
    CHECK(a.lambda == doctest::Approx(b.lambda).epsilon(1e-12));
    CHECK(a.direction == 1.0);
    CHECK(b.direction == -1.0);
    const double t = 0.01;
    CHECK(a.interface_position(t) - 0.5 ==
          doctest::Approx(0.5 - b.interface_position(t)).epsilon(1e-12));
    for (double s : {0.3, 0.45, 0.55, 0.7})
        CHECK(a.temperature(s, t) ==
              doctest::Approx(-b.temperature(1.0 - s, t)).epsilon(1e-10));
    // interface rides the theta_T isotherm: theta_bar(u) = theta_c
    CHECK(a.temperature(a.interface_position(t), t) ==
          doctest::Approx(a.theta_c).epsilon(1e-10));
    CHECK(a.validity_horizon(1.0) == doctest::Approx(0.0625));
}

TEST_CASE("Neumann: no root reported, never guessed") {
    SUBCASE("Stefan number 1 supercooled") {
        CHECK_THROWS_AS(solve_neumann(unit_params(), 0.5), NoBracket);
    }
    SUBCASE("degenerate theta_c = 0") {
        PhysicalParams p = unit_params();
        p.theta_T = 1.0;
        CHECK_THROWS_AS(solve_neumann(p, 0.5), NoBracket);
    }
}

TEST_CASE("manufactured forcing") {
    const PhysicalParams p = unit_params();
    const Grid1D g(64, 1.0);
    std::vector<double> f;
    SUBCASE("zero field, resting interface: zero forcing") {
        ManufacturedCase mc;
        mc.theta = [](double, double) { return 0.0; };
        mc.theta_t = [](double, double) { return 0.0; };
        mc.theta_ss = [](double, double) { return 0.0; };
        mc.u = [](double) { return 0.4; };
        mc.u_dot = [](double) { return 0.0; };
        manufactured_forcing(mc, p, DiffusionScheme::backward_euler)(g, 0.7, f);
        for (double v : f) CHECK(v == 0.0);
    }
    SUBCASE("decaying sine with resting interface") {
        const ManufacturedCase mc = decaying_sine(0.0);
        manufactured_forcing(mc, p, DiffusionScheme::backward_euler)(g, 0.5, f);
        for (std::size_t i = 1; i + 1 < g.n_nodes(); ++i) {
            const double expect = (M_PI * M_PI - 1.0) * std::exp(-0.5) *
                                  std::sin(M_PI * g.node(i));
            CHECK(f[i] == doctest::Approx(expect).epsilon(1e-12));
        }
    }
}

TEST_CASE("manufactured convergence orders") {
    const PhysicalParams p = unit_params();
    const ManufacturedCase mc = decaying_sine(0.1);

    SUBCASE("spatial, Crank-Nicolson with dt = ds") {
        double prev = -1.0;
        std::vector<double> errs;
        for (std::size_t n : {64u, 128u, 256u}) {
            const double ds = 1.0 / static_cast<double>(n);
            errs.push_back(manufactured_l2_error(
                mc, p, n, ds, 1.0, DiffusionScheme::crank_nicolson));
        }
        const double order01 = std::log2(errs[0] / errs[1]);
        const double order12 = std::log2(errs[1] / errs[2]);
        CHECK(order01 >= 1.9);
        CHECK(order12 >= 1.9);
        (void)prev;
    }
    SUBCASE("temporal, backward Euler") {
        const double e1 =
            manufactured_l2_error(mc, p, 512, 0.04, 1.0,
                                  DiffusionScheme::backward_euler);
        const double e2 =
            manufactured_l2_error(mc, p, 512, 0.02, 1.0,
                                  DiffusionScheme::backward_euler);
        CHECK(std::log2(e1 / e2) >= 0.9);
    }
    SUBCASE("temporal, Crank-Nicolson") {
        const double e1 = manufactured_l2_error(
            mc, p, 512, 0.04, 1.0, DiffusionScheme::crank_nicolson);
        const double e2 = manufactured_l2_error(
            mc, p, 512, 0.02, 1.0, DiffusionScheme::crank_nicolson);
        CHECK(std::log2(e1 / e2) >= 1.9);
    }
}

TEST_CASE("scenario catalog") {
    const auto names = scenario_names();
    for (const char* id :
         {"exit-baseline", "mirror-baseline", "equilibrium", "stiff-kinetics"})
        CHECK(std::find(names.begin(), names.end(), id) != names.end());
    CHECK_THROWS_AS(scenario_config("no-such-scenario"), UnknownScenario);

    const RunConfig cfg = scenario_config("exit-baseline", 128);
    CHECK(cfg.n_cells() == 128);
    CHECK(cfg.params().theta_c() == doctest::Approx(1.0));
}

TEST_CASE("fine-grid reference study") {
    SUBCASE("exit-baseline self-converges") {
        const ReferenceStudy study =
            fine_grid_reference("exit-baseline", {128, 256, 512});
        REQUIRE(study.rows.size() == 3);
        for (const auto& r : study.rows) CHECK(std::isfinite(r.t_star));
        CHECK(std::isfinite(study.t_star_extrapolated));
        CHECK(study.observed_order > 0.5);
        // extrapolate close to the finest level
        CHECK(std::abs(study.t_star_extrapolated - study.rows.back().t_star) <
              0.05 * study.rows.back().t_star);
    }
    SUBCASE("equilibrium never exits") {
        const ReferenceStudy study =
            fine_grid_reference("equilibrium", {64, 128});
        for (const auto& r : study.rows) CHECK(!std::isfinite(r.t_star));
    }
}
