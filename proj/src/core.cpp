#include "stefan/core.hpp"

#include <algorithm>
#include <numeric>

namespace stefan {

PhysicalParams make_params(const std::map<std::string, double>& raw) {
    auto get = [&](const char* key) {
        auto it = raw.find(key);
        if (it == raw.end()) throw MissingKey(key);
        return it->second;
    };
    PhysicalParams p;
    p.rho0 = get("rho0");
    p.gamma = get("gamma");
    p.alpha = get("alpha");
    p.K = get("K");
    p.theta_T = get("theta_T");
    p.theta_B = get("theta_B");
    p.L = get("L");

    auto positive = [](double v, const char* key) {
        if (!(v > 0.0) || !std::isfinite(v)) throw NonPositiveParameter(key);
    };
    positive(p.rho0, "rho0");
    positive(p.gamma, "gamma");
    positive(p.K, "K");
    positive(p.L, "L");
    positive(p.theta_T, "theta_T");
    positive(p.theta_B, "theta_B");
    if (!(p.alpha >= 0.0) || !std::isfinite(p.alpha))
        throw NonPositiveParameter("alpha");
    return p;
}

PhysicalParams unit_params() {
    return PhysicalParams{1.0, 1.0, 1.0, 1.0, 2.0, 1.0, 1.0};
}

Grid1D::Grid1D(std::size_t n_cells, double length)
    : n_cells_(n_cells), length_(length) {
    if (n_cells < 4) throw ConfigError("grid needs at least 4 cells");
    if (!(length > 0.0)) throw NonPositiveParameter("L");
    ds_ = length / static_cast<double>(n_cells);
}

TemperatureField::TemperatureField(const Grid1D& grid, std::vector<double> values)
    : grid_(&grid), values_(std::move(values)) {
    if (values_.size() != grid.n_nodes())
        throw ConfigError("field size does not match grid");
    values_.front() = 0.0;
    values_.back() = 0.0;
}

void TemperatureField::assign_interior(const std::vector<double>& v) {
    if (v.size() != values_.size())
        throw ConfigError("field size does not match grid");
    values_ = v;
    values_.front() = 0.0;
    values_.back() = 0.0;
}

bool TemperatureField::all_finite() const {
    return std::all_of(values_.begin(), values_.end(),
                       [](double x) { return std::isfinite(x); });
}

double TemperatureField::min() const {
    return *std::min_element(values_.begin(), values_.end());
}

double TemperatureField::max() const {
    return *std::max_element(values_.begin(), values_.end());
}

double TemperatureField::l2_norm() const {
    const double ds = grid_->spacing();
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < values_.size(); ++i) {
        const double a = values_[i], b = values_[i + 1];
        acc += 0.5 * (a * a + b * b) * ds;
    }
    return std::sqrt(acc);
}

double TemperatureField::integral() const {
    const double ds = grid_->spacing();
    double acc = 0.0;
    for (std::size_t i = 1; i + 1 < values_.size(); ++i) acc += values_[i];
    return acc * ds;  // boundary nodes are zero
}

TemperatureField rescale_temperature(const Grid1D& grid,
                                     const std::vector<double>& theta_physical,
                                     const PhysicalParams& params) {
    if (theta_physical.size() != grid.n_nodes())
        throw ConfigError("field size does not match grid");
    const double tol = 1e-12;
    if (std::abs(theta_physical.front() - params.theta_B) >= tol ||
        std::abs(theta_physical.back() - params.theta_B) >= tol)
        throw BoundaryMismatch("physical boundary value differs from theta_B");
    std::vector<double> v(theta_physical.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = theta_physical[i] - params.theta_B;
    v.front() = 0.0;
    v.back() = 0.0;
    return TemperatureField(grid, std::move(v));
}

double interpolate_at_interface(const TemperatureField& field, double u) {
    const Grid1D& g = field.grid();
    const double ds = g.spacing();
    double x = std::clamp(u, 0.0, g.length());
    auto i = static_cast<std::size_t>(x / ds);
    if (i >= g.n_cells()) i = g.n_cells() - 1;
    const double xi = (x - g.node(i)) / ds;
    return (1.0 - xi) * field[i] + xi * field[i + 1];
}

void InterfaceTrajectory::push(const TrajectorySample& s) {
    if (!samples_.empty() && !(s.t > samples_.back().t))
        throw NumericError("trajectory times must be strictly increasing");
    samples_.push_back(s);
}

bool InterfaceTrajectory::lipschitz_ok(double v_max, double tol) const {
    for (std::size_t k = 0; k + 1 < samples_.size(); ++k) {
        const double dtk = samples_[k + 1].t - samples_[k].t;
        if (std::abs(samples_[k + 1].u - samples_[k].u) > v_max * dtk + tol)
            return false;
    }
    return true;
}

}  // namespace stefan
