// Physical parameters, mesh, nodal temperature field and interface state.
//
// All internal computation works with the rescaled temperature
// theta_bar = theta - theta_B, which satisfies homogeneous Dirichlet
// conditions on (0, L). Physical temperatures appear only at I/O edges.
#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "stefan/errors.hpp"

namespace stefan {

struct PhysicalParams {
    double rho0;     // mass density
    double gamma;    // specific heat
    double alpha;    // latent heat per unit volume (>= 0)
    double K;        // thermal conductivity
    double theta_T;  // transformation temperature
    double theta_B;  // boundary temperature
    double L;        // domain length

    // rescaled critical temperature; positive when the boundary is cooler
    // than the transformation point (martensite-growing regime)
    double theta_c() const { return theta_T - theta_B; }
    // thermal diffusivity
    double diffusivity() const { return K / (gamma * rho0); }
};

// Validates a flat key-value map into PhysicalParams. Required keys:
// rho0, gamma, alpha, K, theta_T, theta_B, L.
PhysicalParams make_params(const std::map<std::string, double>& raw);

// All-ones preset with theta_T = 2, theta_B = 1 (theta_c = 1).
PhysicalParams unit_params();

class Grid1D {
  public:
    Grid1D(std::size_t n_cells, double length);

    std::size_t n_cells() const { return n_cells_; }
    std::size_t n_nodes() const { return n_cells_ + 1; }
    double length() const { return length_; }
    double spacing() const { return ds_; }
    double node(std::size_t i) const { return static_cast<double>(i) * ds_; }

  private:
    std::size_t n_cells_;
    double length_;
    double ds_;
};

// Nodal rescaled temperature on a Grid1D. Boundary nodes are pinned to zero.
class TemperatureField {
  public:
    explicit TemperatureField(const Grid1D& grid)
        : grid_(&grid), values_(grid.n_nodes(), 0.0) {}

    TemperatureField(const Grid1D& grid, std::vector<double> values);

    const Grid1D& grid() const { return *grid_; }
    const std::vector<double>& values() const { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }

    // Overwrites interior values; boundary entries of v are ignored and
    // re-pinned to zero.
    void assign_interior(const std::vector<double>& v);
    double& at(std::size_t i) { return values_[i]; }

    bool all_finite() const;
    double min() const;
    double max() const;
    // L2 norm, trapezoidal quadrature (boundary nodes are zero anyway)
    double l2_norm() const;
    // integral of theta_bar over the domain
    double integral() const;

  private:
    const Grid1D* grid_;
    std::vector<double> values_;
};

// theta_bar = theta_physical - theta_B nodewise. Physical boundary values
// must equal theta_B to within 1e-12, otherwise BoundaryMismatch.
TemperatureField rescale_temperature(const Grid1D& grid,
                                     const std::vector<double>& theta_physical,
                                     const PhysicalParams& params);

// Linear interpolation of the nodal field at position u in [0, L].
double interpolate_at_interface(const TemperatureField& field, double u);

struct InterfaceState {
    double position = 0.0;  // u in [0, L], clamped
    bool active = true;     // gate chi_{u in (0,L)}; sticky once false
    double time = 0.0;
};

struct TrajectorySample {
    double t;
    double u;
    double theta_at_u;  // rescaled temperature at the interface
    double v;           // gated velocity used over the step starting at t
    bool active;
};

// Time-ordered interface history with a discrete-Lipschitz validity check.
class InterfaceTrajectory {
  public:
    void push(const TrajectorySample& s);
    const std::vector<TrajectorySample>& samples() const { return samples_; }
    std::size_t size() const { return samples_.size(); }
    const TrajectorySample& operator[](std::size_t k) const { return samples_[k]; }
    bool empty() const { return samples_.empty(); }

    // |u_{k+1}-u_k| <= v_max (t_{k+1}-t_k) for all k, with slack tol
    bool lipschitz_ok(double v_max, double tol = 1e-12) const;

  private:
    std::vector<TrajectorySample> samples_;
};

}  // namespace stefan
