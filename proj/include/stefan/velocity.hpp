// Constitutive interface-velocity laws v(theta). Every shipped law is
// globally Lipschitz and satisfies the sign condition
//   v(theta) > 0 for theta < theta_T,  v(theta) < 0 for theta > theta_T,
// with v(theta_T) = 0.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stefan/errors.hpp"

namespace stefan {

enum class VelocityKind { linear, saturated, table };

struct SignReport {
    bool pass = true;
    double violation_theta = 0.0;  // first offending sample when !pass
    double violation_value = 0.0;
};

class VelocityLaw {
  public:
    // v = k (theta_T - theta)
    static VelocityLaw linear(double k, double theta_T);
    // v = v_max tanh((theta_T - theta)/scale)
    static VelocityLaw saturated(double v_max, double scale, double theta_T);
    // monotone non-increasing piecewise-linear table over strictly
    // increasing theta samples; flat extension outside the range
    static VelocityLaw table(std::vector<double> theta, std::vector<double> v,
                             double theta_T);
    // two-column text file (theta, v)
    static VelocityLaw table_from_file(const std::string& path, double theta_T);

    double eval(double theta) const;
    double lipschitz_constant() const;
    double theta_T() const { return theta_T_; }
    VelocityKind kind() const { return kind_; }

    // speed cap when one exists (saturated and table laws)
    std::optional<double> v_max() const;
    // raw law parameters, exposed for serialization
    double stiffness() const { return k_; }
    double saturation_scale() const { return scale_; }
    const std::vector<double>& table_thetas() const { return tab_theta_; }
    const std::vector<double>& table_values() const { return tab_v_; }
    // max |v| over the closed physical-temperature interval [lo, hi]
    double max_speed_over(double lo, double hi) const;

    // Samples m points over [theta_T - delta, theta_T + delta] and checks
    // the sign pattern; reports the first violation.
    SignReport validate_sign_condition(std::size_t m, double delta) const;
    // throwing variant used at load time
    void require_sign_condition(std::size_t m, double delta) const;

  private:
    VelocityLaw() = default;
    VelocityKind kind_ = VelocityKind::linear;
    double theta_T_ = 0.0;
    double k_ = 0.0;          // linear stiffness
    double cap_ = 0.0;        // saturated v_max
    double scale_ = 0.0;      // saturated scale
    std::vector<double> tab_theta_;
    std::vector<double> tab_v_;
};

}  // namespace stefan
