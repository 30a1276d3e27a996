#include "stefan/mollifier.hpp"

#include <cmath>

namespace stefan {

namespace {

// integral of exp(-1/(1-y^2)) over (-1,1), computed once by midpoint
// quadrature; the integrand vanishes to all orders at the endpoints so the
// rule converges fast
double bump_mass_constant() {
    static const double value = [] {
        const int n = 200000;
        const double h = 2.0 / n;
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            const double y = -1.0 + (i + 0.5) * h;
            acc += std::exp(-1.0 / (1.0 - y * y));
        }
        return acc * h;
    }();
    return value;
}

}  // namespace

double MollifiedDirac::density(double x) const {
    const double y = x / epsilon;
    if (std::abs(y) >= 1.0) return 0.0;
    switch (profile) {
        case MollifierProfile::bump:
            return std::exp(-1.0 / (1.0 - y * y)) / (bump_mass_constant() * epsilon);
        case MollifierProfile::cosine:
            return (1.0 + std::cos(M_PI * y)) / (2.0 * epsilon);
    }
    return 0.0;
}

std::vector<double> evaluate_on_grid(const MollifiedDirac& d, const Grid1D& grid) {
    const double ds = grid.spacing();
    const double L = grid.length();
    if (d.epsilon < 2.0 * ds)
        throw UnresolvableWidth("mollifier half-width below 2*ds");
    if (d.center < 0.0 || d.center > L)
        throw ConfigError("mollifier center outside the domain");

    const std::size_t n = grid.n_nodes();
    std::vector<double> w(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double s = grid.node(i);
        double v = d.density(s - d.center);
        // fold overhanging support back into the domain by reflection
        v += d.density(-s - d.center);
        v += d.density(2.0 * L - s - d.center);
        w[i] = v;
    }
    // Dirichlet rows are not part of the solve; push their weight inward
    if (n >= 2) {
        w[1] += w[0];
        w[0] = 0.0;
        w[n - 2] += w[n - 1];
        w[n - 1] = 0.0;
    }
    double mass = 0.0;
    for (double v : w) mass += v;
    mass *= ds;
    if (mass <= 0.0) throw NumericError("mollifier has zero discrete mass");
    for (double& v : w) v /= mass;
    return w;
}

double weak_star_consistency(const MollifiedDirac& d, const Grid1D& grid,
                             const std::function<double(double)>& psi) {
    const auto w = evaluate_on_grid(d, grid);
    const double ds = grid.spacing();
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * psi(grid.node(i));
    return acc * ds;
}

}  // namespace stefan
