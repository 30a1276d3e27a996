#include "stefan/laminate.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace stefan {

Mat3 identity3() {
    Mat3 m{};
    m[0][0] = m[1][1] = m[2][2] = 1.0;
    return m;
}

Mat3 outer(const Vec3& a, const Vec3& n) {
    Mat3 m{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = a[i] * n[j];
    return m;
}

Mat3 add(const Mat3& A, const Mat3& B) {
    Mat3 m{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = A[i][j] + B[i][j];
    return m;
}

Mat3 sub(const Mat3& A, const Mat3& B) {
    Mat3 m{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = A[i][j] - B[i][j];
    return m;
}

Mat3 scale(const Mat3& A, double c) {
    Mat3 m{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = c * A[i][j];
    return m;
}

double norm(const Vec3& v) {
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

RankOneDecomposition extract_rank_one(const Mat3& M) {
    Eigen::Matrix3d N;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) N(i, j) = M[i][j] - (i == j ? 1.0 : 0.0);

    Eigen::JacobiSVD<Eigen::Matrix3d> svd(
        N, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::Vector3d sv = svd.singularValues();
    const double sigma1 = sv(0), sigma2 = sv(1);

    RankOneDecomposition out;
    out.sigma2 = sigma2;
    if (sigma2 > 1e-10 * std::max(sigma1, 1.0))
        throw NotRankOne("M - I has numerical rank > 1", sigma2);

    if (sigma1 <= 1e-14) {
        out.degenerate = true;
        out.a = {0.0, 0.0, 0.0};
        out.n = {1.0, 0.0, 0.0};
        return out;
    }
    Eigen::Vector3d nvec = svd.matrixV().col(0);
    // deterministic sign: first nonzero component positive
    for (int i = 0; i < 3; ++i) {
        if (std::abs(nvec(i)) > 1e-14) {
            if (nvec(i) < 0.0) nvec = -nvec;
            break;
        }
    }
    const Eigen::Vector3d avec = N * nvec;  // N = a (x) n with |n| = 1
    out.n = {nvec(0), nvec(1), nvec(2)};
    out.a = {avec(0), avec(1), avec(2)};
    return out;
}

Mat3 barycenter(const Mat3& A, const Mat3& B, double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw LambdaOutOfRange("lambda must lie in [0, 1]");
    return add(scale(A, lambda), scale(B, 1.0 - lambda));
}

void LaminateSpec::validate() {
    const Mat3 mean = barycenter(A, B, lambda);
    try {
        const RankOneDecomposition dec = extract_rank_one(mean);
        a = dec.a;
        n = dec.n;
        degenerate = dec.degenerate;
    } catch (const NotRankOne& e) {
        throw IncompatibleSpec(
            "laminate barycenter is not rank-one connected to the identity",
            e.sigma2);
    }
}

namespace {

Mat3 parse_matrix(const std::string& text, const std::string& key) {
    std::istringstream in(text);
    Mat3 m{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (!(in >> m[i][j]))
                throw ConfigError(key + " needs 9 row-major numbers");
    double extra;
    if (in >> extra) throw ConfigError(key + " has more than 9 numbers");
    return m;
}

}  // namespace

LaminateSpec load_laminate_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open laminate spec: " + path);
    std::string line, a_text, b_text;
    double lambda = -1.0;
    bool have_a = false, have_b = false, have_l = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        if (eq == std::string::npos)
            throw ConfigError("laminate spec line " + std::to_string(lineno) +
                              " is not key = value");
        std::string key = line.substr(0, eq);
        key.erase(0, key.find_first_not_of(" \t"));
        key.erase(key.find_last_not_of(" \t") + 1);
        const std::string value = line.substr(eq + 1);
        if (key == "laminate.A") {
            a_text = value;
            have_a = true;
        } else if (key == "laminate.B") {
            b_text = value;
            have_b = true;
        } else if (key == "laminate.lambda") {
            lambda = std::stod(value);
            have_l = true;
        } else {
            throw UnknownKey(key);
        }
    }
    if (!have_a) throw MissingKey("laminate.A");
    if (!have_b) throw MissingKey("laminate.B");
    if (!have_l) throw MissingKey("laminate.lambda");
    LaminateSpec spec;
    spec.A = parse_matrix(a_text, "laminate.A");
    spec.B = parse_matrix(b_text, "laminate.B");
    spec.lambda = lambda;
    spec.validate();
    return spec;
}

std::vector<DeformationSnapshot> reconstruct_deformation(
    const InterfaceTrajectory& trajectory, const LaminateSpec& spec) {
    std::vector<DeformationSnapshot> out;
    out.reserve(trajectory.size());
    for (const auto& s : trajectory.samples()) {
        DeformationSnapshot snap;
        snap.t = s.t;
        snap.u = s.u;
        snap.c2 = {0.0, 0.0, 0.0};
        snap.c1 = {-spec.a[0] * s.u, -spec.a[1] * s.u, -spec.a[2] * s.u};
        // continuity across x3 = u requires c2 - c1 = a u
        Vec3 defect{snap.c2[0] - snap.c1[0] - spec.a[0] * s.u,
                    snap.c2[1] - snap.c1[1] - spec.a[1] * s.u,
                    snap.c2[2] - snap.c1[2] - spec.a[2] * s.u};
        snap.continuity_defect = norm(defect);
        out.push_back(snap);
    }
    return out;
}

Vec3 deform_point(const DeformationSnapshot& snap, const LaminateSpec& spec,
                  const Vec3& x) {
    Vec3 y = x;
    if (x[2] < snap.u) {
        for (int i = 0; i < 3; ++i) y[i] += spec.a[i] * x[2] + snap.c1[i];
    } else {
        for (int i = 0; i < 3; ++i) y[i] += snap.c2[i];
    }
    return y;
}

std::vector<double> entropy_barycenter(const Grid1D& grid, double u,
                                       double alpha, double theta_T) {
    const double well = -alpha / theta_T;
    std::vector<double> field(grid.n_nodes(), 0.0);
    const auto jump =
        static_cast<std::size_t>(std::llround(std::clamp(u, 0.0, grid.length()) /
                                              grid.spacing()));
    for (std::size_t i = 0; i < field.size(); ++i)
        field[i] = i < jump ? well : 0.0;
    return field;
}

namespace {

// exact integral of the piecewise-linear nodal interpolant of psi from 0
// to x
double integral_of_interpolant(const std::vector<double>& psi,
                               const Grid1D& grid, double x) {
    const double ds = grid.spacing();
    x = std::clamp(x, 0.0, grid.length());
    auto i = static_cast<std::size_t>(x / ds);
    if (i >= grid.n_cells()) i = grid.n_cells() - 1;
    double acc = 0.0;
    for (std::size_t j = 0; j < i; ++j) acc += 0.5 * (psi[j] + psi[j + 1]) * ds;
    const double xi = (x - grid.node(i)) / ds;
    const double psix = (1.0 - xi) * psi[i] + xi * psi[i + 1];
    acc += 0.5 * (psi[i] + psix) * (x - grid.node(i));
    return acc;
}

}  // namespace

std::vector<double> entropy_source_residuals(
    const InterfaceTrajectory& trajectory, const Grid1D& grid,
    const std::function<double(double)>& psi) {
    std::vector<double> psi_nodes(grid.n_nodes());
    for (std::size_t i = 0; i < psi_nodes.size(); ++i)
        psi_nodes[i] = psi(grid.node(i));

    const auto& tr = trajectory.samples();
    std::vector<double> residuals;
    if (tr.size() < 2) return residuals;
    residuals.reserve(tr.size() - 1);
    for (std::size_t k = 0; k + 1 < tr.size(); ++k) {
        const double dt = tr[k + 1].t - tr[k].t;
        const double lhs = (integral_of_interpolant(psi_nodes, grid, tr[k + 1].u) -
                            integral_of_interpolant(psi_nodes, grid, tr[k].u)) /
                           dt;
        const double udot = (tr[k + 1].u - tr[k].u) / dt;
        double xi;
        const double x = std::clamp(tr[k].u, 0.0, grid.length());
        auto i = static_cast<std::size_t>(x / grid.spacing());
        if (i >= grid.n_cells()) i = grid.n_cells() - 1;
        xi = (x - grid.node(i)) / grid.spacing();
        const double psi_at_u = (1.0 - xi) * psi_nodes[i] + xi * psi_nodes[i + 1];
        residuals.push_back(lhs - udot * psi_at_u);
    }
    return residuals;
}

LaminateSpec random_compatible_spec(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    auto draw = [&] {
        Vec3 v{unit(rng), unit(rng), unit(rng)};
        return v;
    };
    Vec3 n = draw();
    while (norm(n) < 0.1) n = draw();
    const double nn = norm(n);
    for (double& c : n) c /= nn;
    Vec3 a = draw();
    while (norm(a) < 0.05) a = draw();
    Vec3 b = draw();
    const double lambda =
        0.05 + 0.9 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);

    LaminateSpec spec;
    Vec3 shear_a{a[0] + (1.0 - lambda) * b[0], a[1] + (1.0 - lambda) * b[1],
                 a[2] + (1.0 - lambda) * b[2]};
    Vec3 shear_b{a[0] - lambda * b[0], a[1] - lambda * b[1],
                 a[2] - lambda * b[2]};
    spec.A = add(identity3(), outer(shear_a, n));
    spec.B = add(identity3(), outer(shear_b, n));
    spec.lambda = lambda;
    spec.validate();
    return spec;
}

MovingMaskReport moving_mask_audit(const InterfaceTrajectory& trajectory,
                                   const LaminateSpec& spec, double v_max,
                                   const std::vector<LaminateSpec>* per_sample) {
    MovingMaskReport rep;
    // phases tile (0, L): with a single clamped interface point this holds
    // whenever every sample stays inside the closed domain
    rep.partition_ok = true;
    for (const auto& s : trajectory.samples())
        if (!(s.u >= 0.0) || !std::isfinite(s.u)) rep.partition_ok = false;

    // gradient on the austenite side is I by the c2 = 0 gauge; deviation
    // would show up as a nonzero continuity defect drift
    const auto snaps = reconstruct_deformation(trajectory, spec);
    rep.austenite_identity_ok = true;
    for (const auto& s : snaps)
        if (s.continuity_defect > 1e-12 * std::max(1.0, norm(spec.a)))
            rep.austenite_identity_ok = false;

    rep.interface_continuous_ok = trajectory.lipschitz_ok(v_max);
    rep.microstructure_frozen_ok = true;
    if (per_sample) {
        for (const auto& other : *per_sample) {
            double drift = std::abs(other.lambda - spec.lambda);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    drift = std::max({drift,
                                      std::abs(other.A[i][j] - spec.A[i][j]),
                                      std::abs(other.B[i][j] - spec.B[i][j])});
            if (drift > 1e-12) rep.microstructure_frozen_ok = false;
        }
    }
    return rep;
}

}  // namespace stefan
