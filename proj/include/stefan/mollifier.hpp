// Smoothed point source: positive, symmetric, compactly supported kernel
// with unit mass, used by the regularized source mode.
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "stefan/core.hpp"

namespace stefan {

enum class MollifierProfile {
    bump,    // exp(-1/(1-(x/eps)^2)), mass normalized numerically
    cosine,  // (1+cos(pi x/eps))/(2 eps), closed-form unit mass
};

struct MollifiedDirac {
    double epsilon;  // half-width of the support
    double center;
    MollifierProfile profile = MollifierProfile::cosine;

    // kernel density at offset x from the center (continuous normalization)
    double density(double x) const;
};

// Samples the kernel at grid nodes and renormalizes so that
// sum w_i * ds == 1 exactly. Mass overhanging the domain edge is folded
// back by reflection; weight landing on a Dirichlet boundary node is
// moved to the nearest interior node.
// Requires epsilon >= 2*ds (UnresolvableWidth) and 0 <= center <= L.
std::vector<double> evaluate_on_grid(const MollifiedDirac& d, const Grid1D& grid);

// sum w_i psi(s_i) ds; tends to psi(center) as epsilon -> 0.
double weak_star_consistency(const MollifiedDirac& d, const Grid1D& grid,
                             const std::function<double(double)>& psi);

}  // namespace stefan
