// Solver-independent references: the classical similarity solution for the
// melting front, manufactured-solution forcing, fine-grid self-convergence
// studies and the named scenario catalog.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "stefan/config.hpp"
#include "stefan/core.hpp"
#include "stefan/solver.hpp"

namespace stefan {

// Classical two-phase similarity solution on a semi-infinite idealization:
// the interface sits on the theta_T isotherm and follows
//   u(t) = u0 + direction * 2 lambda sqrt(D t).
// Far-field rescaled temperatures are prescribed on each side of the front.
struct NeumannSolution {
    double lambda;     // positive growth coefficient
    double D;          // thermal diffusivity K/(gamma rho0)
    double u0;
    double direction;  // +1: front moves right (theta_c > 0), -1 mirrored
    double theta_c;
    double far_behind;  // far-field theta_bar behind the front
    double far_ahead;   // far-field theta_bar ahead of the front
    double residual;    // transcendental-equation defect at lambda

    double interface_position(double t) const;
    double interface_velocity(double t) const;
    double temperature(double s, double t) const;
    // comparison window: sqrt(D t) must stay below min(u0, L-u0)/2
    double validity_horizon(double L) const;
};

// Transcendental balance whose root is lambda (theta_c > 0 normalization):
//   alpha lambda e^{lambda^2} sqrt(pi)
//     = gamma rho0 [ (theta_c - far_behind)/(1 + erf lambda)
//                  + (theta_c - far_ahead)/erfc lambda ].
double neumann_equation(double lambda, const PhysicalParams& params,
                        double far_behind, double far_ahead);

// Bracketed bisection on the balance; NoBracket when the parameters admit
// no root in the search window (e.g. Stefan number >= 1 for the supercooled
// case).
NeumannSolution solve_neumann(const PhysicalParams& params, double u0,
                              double far_behind = 0.0, double far_ahead = 0.0);

// Manufactured-solution description: exact field, its derivatives, and the
// prescribed interface path.
struct ManufacturedCase {
    std::function<double(double s, double t)> theta;
    std::function<double(double s, double t)> theta_t;
    std::function<double(double s, double t)> theta_ss;
    std::function<double(double t)> u;
    std::function<double(double t)> u_dot;
};

// Smooth forcing f = gamma rho0 d_t theta - K d_ss theta, minus a discrete
// deposit matching the solver's own latent-heat deposition so the two
// cancel and the smooth field is recovered at scheme order.
NodalForcing manufactured_forcing(const ManufacturedCase& mc,
                                  const PhysicalParams& params,
                                  DiffusionScheme scheme);

// Runs a manufactured case and returns the L2 error at t_end.
double manufactured_l2_error(const ManufacturedCase& mc,
                             const PhysicalParams& params, std::size_t n_cells,
                             double dt, double t_end, DiffusionScheme scheme);

struct ConvergenceRow {
    std::size_t n_cells;
    double dt;
    double t_star;      // NaN when no exit
    double final_l2;
};

struct ReferenceStudy {
    std::vector<ConvergenceRow> rows;
    double t_star_extrapolated;  // Richardson extrapolate (NaN if unavailable)
    double observed_order;       // from successive t* gaps (NaN if unavailable)
};

// Scenario catalog. Scenarios are stored as run-config text and can be
// listed, fetched, and instantiated at any resolution.
std::vector<std::string> scenario_names();
RunConfig scenario_config(const std::string& id);
// same scenario re-gridded at a given resolution (dt rescales with ds)
RunConfig scenario_config(const std::string& id, std::size_t n_cells);

// Runs a catalog scenario at increasing resolution and reports t* and the
// observed convergence behaviour. Throws NonConverging when successive t*
// gaps fail to shrink.
ReferenceStudy fine_grid_reference(const std::string& scenario_id,
                                   const std::vector<std::size_t>& levels);

}  // namespace stefan
