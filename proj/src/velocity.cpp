#include "stefan/velocity.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace stefan {

VelocityLaw VelocityLaw::linear(double k, double theta_T) {
    if (!(k > 0.0)) throw NonPositiveParameter("law.k");
    VelocityLaw law;
    law.kind_ = VelocityKind::linear;
    law.k_ = k;
    law.theta_T_ = theta_T;
    return law;
}

VelocityLaw VelocityLaw::saturated(double v_max, double scale, double theta_T) {
    if (!(v_max > 0.0)) throw NonPositiveParameter("law.v_max");
    if (!(scale > 0.0)) throw NonPositiveParameter("law.scale");
    VelocityLaw law;
    law.kind_ = VelocityKind::saturated;
    law.cap_ = v_max;
    law.scale_ = scale;
    law.theta_T_ = theta_T;
    return law;
}

VelocityLaw VelocityLaw::table(std::vector<double> theta, std::vector<double> v,
                               double theta_T) {
    if (theta.size() != v.size() || theta.size() < 2)
        throw ConfigError("velocity table needs at least two (theta, v) rows");
    for (std::size_t i = 0; i + 1 < theta.size(); ++i) {
        if (!(theta[i + 1] > theta[i]))
            throw ConfigError("velocity table theta column must be strictly increasing");
        if (v[i + 1] > v[i])
            throw SignConditionViolated(
                "velocity table must be monotone non-increasing", theta[i + 1]);
    }
    VelocityLaw law;
    law.kind_ = VelocityKind::table;
    law.tab_theta_ = std::move(theta);
    law.tab_v_ = std::move(v);
    law.theta_T_ = theta_T;
    const double span =
        std::max(std::abs(law.tab_theta_.front() - theta_T),
                 std::abs(law.tab_theta_.back() - theta_T));
    law.require_sign_condition(1001, span > 0.0 ? span : 1.0);
    return law;
}

VelocityLaw VelocityLaw::table_from_file(const std::string& path, double theta_T) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open velocity table: " + path);
    std::vector<double> th, vv;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream row(line);
        double a, b;
        if (row >> a >> b) {
            th.push_back(a);
            vv.push_back(b);
        }
    }
    return table(std::move(th), std::move(vv), theta_T);
}

double VelocityLaw::eval(double theta) const {
    switch (kind_) {
        case VelocityKind::linear:
            return k_ * (theta_T_ - theta);
        case VelocityKind::saturated:
            return cap_ * std::tanh((theta_T_ - theta) / scale_);
        case VelocityKind::table: {
            if (theta <= tab_theta_.front()) return tab_v_.front();
            if (theta >= tab_theta_.back()) return tab_v_.back();
            const auto it =
                std::upper_bound(tab_theta_.begin(), tab_theta_.end(), theta);
            const std::size_t j = static_cast<std::size_t>(it - tab_theta_.begin());
            const double t0 = tab_theta_[j - 1], t1 = tab_theta_[j];
            const double xi = (theta - t0) / (t1 - t0);
            return (1.0 - xi) * tab_v_[j - 1] + xi * tab_v_[j];
        }
    }
    return 0.0;
}

double VelocityLaw::lipschitz_constant() const {
    switch (kind_) {
        case VelocityKind::linear:
            return k_;
        case VelocityKind::saturated:
            return cap_ / scale_;
        case VelocityKind::table: {
            double lip = 0.0;
            for (std::size_t i = 0; i + 1 < tab_theta_.size(); ++i) {
                const double slope = std::abs(tab_v_[i + 1] - tab_v_[i]) /
                                     (tab_theta_[i + 1] - tab_theta_[i]);
                lip = std::max(lip, slope);
            }
            return lip;
        }
    }
    return 0.0;
}

std::optional<double> VelocityLaw::v_max() const {
    switch (kind_) {
        case VelocityKind::linear:
            return std::nullopt;
        case VelocityKind::saturated:
            return cap_;
        case VelocityKind::table: {
            double m = 0.0;
            for (double v : tab_v_) m = std::max(m, std::abs(v));
            return m;
        }
    }
    return std::nullopt;
}

double VelocityLaw::max_speed_over(double lo, double hi) const {
    if (lo > hi) std::swap(lo, hi);
    // shipped laws are monotone non-increasing in theta, so the extrema
    // sit at the interval endpoints
    return std::max(std::abs(eval(lo)), std::abs(eval(hi)));
}

SignReport VelocityLaw::validate_sign_condition(std::size_t m, double delta) const {
    SignReport rep;
    if (m < 3) throw ConfigError("sign-condition check needs at least 3 samples");
    // samples exactly at theta_T count only through the v(theta_T)=0 check
    const double zero_tol = 1e-12 * std::max(1.0, std::abs(eval(theta_T_ - delta)));
    for (std::size_t i = 0; i < m; ++i) {
        const double theta =
            theta_T_ - delta + 2.0 * delta * static_cast<double>(i) /
                                   static_cast<double>(m - 1);
        const double v = eval(theta);
        bool ok = true;
        if (theta < theta_T_)
            ok = v > 0.0;
        else if (theta > theta_T_)
            ok = v < 0.0;
        else
            ok = std::abs(v) <= zero_tol;
        if (!ok) {
            rep.pass = false;
            rep.violation_theta = theta;
            rep.violation_value = v;
            return rep;
        }
    }
    return rep;
}

void VelocityLaw::require_sign_condition(std::size_t m, double delta) const {
    const SignReport rep = validate_sign_condition(m, delta);
    if (!rep.pass)
        throw SignConditionViolated("velocity law violates the sign condition",
                                    rep.violation_theta);
}

}  // namespace stefan
