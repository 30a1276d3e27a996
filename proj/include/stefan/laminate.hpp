// Laminate geometry behind the one-dimensional model: rank-one
// compatibility of the martensite mixture with austenite, reconstruction
// of the piecewise-affine deformation from the interface trajectory, the
// entropy-source identity and the moving-mask audit.
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "stefan/core.hpp"
#include "stefan/errors.hpp"

namespace stefan {

using Mat3 = std::array<std::array<double, 3>, 3>;
using Vec3 = std::array<double, 3>;

Mat3 identity3();
Mat3 outer(const Vec3& a, const Vec3& n);
Mat3 add(const Mat3& A, const Mat3& B);
Mat3 sub(const Mat3& A, const Mat3& B);
Mat3 scale(const Mat3& A, double c);
double norm(const Vec3& v);

struct RankOneDecomposition {
    Vec3 a;
    Vec3 n;        // unit, first nonzero component positive
    bool degenerate = false;  // M == I: a = 0, n = e1 by convention
    double sigma2 = 0.0;      // second singular value of M - I (diagnostic)
};

// Decomposes M = I + a (x) n when M - I has numerical rank <= 1
// (sigma2 <= 1e-10 * max(sigma1, 1)); otherwise throws NotRankOne with
// sigma2 as diagnostic.
RankOneDecomposition extract_rank_one(const Mat3& M);

// componentwise convex combination lambda A + (1 - lambda) B
Mat3 barycenter(const Mat3& A, const Mat3& B, double lambda);

struct LaminateSpec {
    Mat3 A;
    Mat3 B;
    double lambda;
    // derived on validation
    Vec3 a{};
    Vec3 n{};
    bool degenerate = false;

    // extracts (a, n) from the barycenter; throws IncompatibleSpec when the
    // mixture is not rank-one connected to the identity
    void validate();
};

LaminateSpec load_laminate_spec(const std::string& path);

struct DeformationSnapshot {
    double t;
    double u;
    Vec3 c1;  // translation on the martensite side x3 < u
    Vec3 c2;  // translation on the austenite side (gauge: c2 = 0)
    // continuity defect |c2 - c1 - a u| at the interface
    double continuity_defect;
};

// Gauge c2 = 0: the austenite is anchored to the reference configuration,
// so c1 = -a u at every sample.
std::vector<DeformationSnapshot> reconstruct_deformation(
    const InterfaceTrajectory& trajectory, const LaminateSpec& spec);

// Deformation map at a single snapshot.
Vec3 deform_point(const DeformationSnapshot& snap, const LaminateSpec& spec,
                  const Vec3& x);

// Nodal entropy barycenter: two-valued field, -alpha/theta_T on the
// martensite side of u, 0 on the austenite side, jump at the node nearest
// to u.
std::vector<double> entropy_barycenter(const Grid1D& grid, double u,
                                       double alpha, double theta_T);

// Transport identity d/dt int_0^{u(t)} psi ds = u_dot psi(u(t)) checked by
// one-sided differencing of the exactly integrated nodal interpolant of
// psi; the residual is first order in the sampling interval.
std::vector<double> entropy_source_residuals(
    const InterfaceTrajectory& trajectory, const Grid1D& grid,
    const std::function<double(double)>& psi);

struct MovingMaskReport {
    bool partition_ok;     // phases tile the domain up to the interface point
    bool austenite_identity_ok;  // gradient is I on the austenite side
    bool interface_continuous_ok;  // discrete Lipschitz bound on u(t)
    bool microstructure_frozen_ok;  // (A, B, lambda, a) constant in time
    bool all() const {
        return partition_ok && austenite_identity_ok && interface_continuous_ok &&
               microstructure_frozen_ok;
    }
};

// Audits a constructed solution; v_max bounds the admissible interface
// speed for the continuity assertion. When a per-sample spec series is
// supplied, the frozen-microstructure assertion compares every entry
// against the reference spec (componentwise 1e-12).
MovingMaskReport moving_mask_audit(
    const InterfaceTrajectory& trajectory, const LaminateSpec& spec,
    double v_max, const std::vector<LaminateSpec>* per_sample = nullptr);

// Random compatible pair: A = I + a(x)n + (1-lambda) b(x)n and
// B = I + a(x)n - lambda b(x)n share the normal n, so the lambda-barycenter
// is exactly I + a(x)n. Deterministic in the seed.
LaminateSpec random_compatible_spec(std::uint64_t seed);

}  // namespace stefan
