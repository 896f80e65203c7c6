/*
 Copyright 2026 The hoopctl Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#ifndef HOOP_CERTIFICATE_HPP
#define HOOP_CERTIFICATE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hoop/controller.hpp"
#include "hoop/error.hpp"
#include "hoop/geometry.hpp"
#include "hoop/params.hpp"
#include "hoop/sim.hpp"

/**
 * Numeric checks of the PID gain conditions
 *
 *     0 < k_I < k_d^3 (1 - delta^2) / mu,
 *     k_p > max{k_1, k_2, 2 kappa k_d^2},
 *
 * and of the quadratic forms P_s (lower bound of W_s) and Q_s (decay of
 * W_s) used in the stability argument.
 */
namespace hoop::certificate {

struct DerivedConstants {
    double delta = 0.0;       ///< 1 - I_min / I_max
    double mu = 1.0;
    double kappa_low = 1.0;   ///< 1 / mu (exclusive)
    double kappa_high = 2.0;  ///< 2 / mu (exclusive)
    double inertia_min = 0.0; ///< I_h + M r^2 - m_a^2 r^2 l^2 / J
    double inertia_max = 0.0; ///< I_h + M r^2

    /// Midpoint of the admissible kappa interval.
    double kappa_mid() const { return 0.5 * (kappa_low + kappa_high); }
};

/**
 * delta, mu and the kappa interval for a nominal model. `velocity_bound` is
 * k_X, the speed bound of the compact operating region being certified.
 */
inline DerivedConstants derived_constants(const NominalParams &n, double velocity_bound) {
    const Body &b = n.body;
    const double rolling = b.rolling_inertia();
    const double coupling_sq = b.coupling() * b.coupling();
    const double discriminant = rolling * (rolling * b.actuator_pivot_inertia() - coupling_sq);
    if (!(discriminant > 0.0)) {
        throw ParameterError("derived_constants: negative discriminant, inertia condition violated");
    }
    if (!(std::isfinite(velocity_bound) && velocity_bound >= 0.0)) {
        throw ParameterError("derived_constants: velocity bound must be non-negative");
    }
    const geometry::HoopInertia field(b);

    DerivedConstants d;
    d.inertia_min = field.min();
    d.inertia_max = field.max();
    d.delta = 1.0 - d.inertia_min / d.inertia_max;
    d.mu = 1.0 + coupling_sq * velocity_bound / (2.0 * std::sqrt(discriminant));
    d.kappa_low = 1.0 / d.mu;
    d.kappa_high = 2.0 / d.mu;
    return d;
}

// -----------------------------------------------------------------------------
// Lyapunov matrices
// -----------------------------------------------------------------------------

/// Free constants of the quadratic forms.
struct ProofParameters {
    double alpha = 0.0;
    double beta = 0.0;
    double sigma = 0.0;
    double gamma = 0.0;
    double theta = 1.0;    ///< vartheta: <<eta, eta>> / (2 vartheta) <= V_y
    double mu_min = 1.0;
    double mu_max = 1.0;
};

/**
 * The choices made in the stability argument: beta = k_I / k_d,
 * sigma = 2 kappa k_I, gamma = k_I (alpha k_d + k_p) / k_d, plus
 * alpha = k_I / k_d^2, which cancels the (2,3) entry of Q_s.
 */
inline ProofParameters proof_parameters(const controller::Gains &g, double kappa, double mu_min,
                                        double mu_max, double theta = 1.0) {
    ProofParameters p;
    p.alpha = g.ki / (g.kd * g.kd);
    p.beta = g.ki / g.kd;
    p.sigma = 2.0 * kappa * g.ki;
    p.gamma = g.ki * (p.alpha * g.kd + g.kp) / g.kd;
    p.theta = theta;
    p.mu_min = mu_min;
    p.mu_max = mu_max;
    return p;
}

struct LyapunovMatrices {
    Eigen::Matrix3d p_s;
    Eigen::Matrix3d q_s;
    Eigen::Vector3d p_eigenvalues; ///< ascending
    Eigen::Vector3d q_eigenvalues; ///< ascending

    bool p_definite() const { return p_eigenvalues(0) > 0.0; }
    bool q_definite() const { return q_eigenvalues(0) > 0.0; }
};

inline Eigen::Matrix3d lower_bound_matrix(const controller::Gains &g, const ProofParameters &pp) {
    Eigen::Matrix3d p;
    p << pp.gamma, -pp.sigma, -pp.beta,
         -pp.sigma, g.kp / pp.theta, -pp.alpha,
         -pp.beta, -pp.alpha, 1.0;
    return p;
}

inline Eigen::Matrix3d decay_matrix(const controller::Gains &g, const ProofParameters &pp) {
    const double delta = 1.0 - pp.mu_min / pp.mu_max;
    const double cross = (g.ki - pp.alpha * g.kd * g.kd) / (2.0 * g.kd);
    Eigen::Matrix3d q;
    q << g.ki * g.ki / g.kd, 0.0, -delta * g.ki,
         0.0, pp.alpha * g.kp - 2.0 * g.kd / pp.mu_max, cross,
         -delta * g.ki, cross, g.kd - pp.alpha * pp.mu_max;
    return q;
}

inline LyapunovMatrices lyapunov_matrices(const controller::Gains &g, const ProofParameters &pp) {
    LyapunovMatrices m;
    m.p_s = lower_bound_matrix(g, pp);
    m.q_s = decay_matrix(g, pp);
    if (!m.p_s.allFinite() || !m.q_s.allFinite()) {
        throw DomainError("lyapunov_matrices: non-finite entries");
    }
    m.p_eigenvalues = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(m.p_s, Eigen::EigenvaluesOnly)
                          .eigenvalues();
    m.q_eigenvalues = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(m.q_s, Eigen::EigenvaluesOnly)
                          .eigenvalues();
    return m;
}

/// Overload applying the proof's parameter choices.
inline LyapunovMatrices lyapunov_matrices(const controller::Gains &g, double kappa, double theta,
                                          double mu_min, double mu_max) {
    return lyapunov_matrices(g, proof_parameters(g, kappa, mu_min, mu_max, theta));
}

// -----------------------------------------------------------------------------
// Gain conditions
// -----------------------------------------------------------------------------

struct GainThresholds {
    double k1 = 0.0;
    double k2 = 0.0;
    double kp_lower = 0.0; ///< max{k1, k2, 2 kappa k_d^2}
    double ki_upper = 0.0; ///< k_d^3 (1 - delta^2) / mu
};

/// `r_const` is the positive constant r appearing in k_1 and k_2.
inline GainThresholds gain_thresholds(const controller::Gains &g, double delta, double mu,
                                      double kappa, double r_const) {
    const double kd = g.kd;
    const double ki = g.ki;
    const double kd3 = kd * kd * kd;

    GainThresholds t;
    t.ki_upper = kd3 * (1.0 - delta * delta) / mu;
    t.k1 = ki / (2.0 * kd) * (std::sqrt(1.0 + 16.0 * r_const * kappa * kappa * kd * kd / ki) - 1.0);
    t.k2 = r_const * ki * ki / (2.0 * kd3 * kd) *
           (1.0 + std::sqrt(1.0 + 4.0 * kd3 * (ki * ki + 4.0 * kappa * kd3 * (1.0 + kappa * kd3)) /
                                      (r_const * ki * ki * ki)));
    t.kp_lower = std::max({t.k1, t.k2, 2.0 * kappa * kd * kd});
    return t;
}

struct CertificateReport {
    controller::Gains gains{};
    double delta = 0.0;
    double mu = 1.0;
    double kappa = 1.0;
    double kappa_low = 1.0;
    double kappa_high = 2.0;
    double r_const = 1.0;
    GainThresholds thresholds{};
    double ki_margin = 0.0; ///< ki_upper - k_I (positive when satisfied)
    double kp_margin = 0.0; ///< k_p - kp_lower (positive when satisfied)
    bool ki_ok = false;
    bool kp_ok = false;
    bool kappa_ok = false;  ///< kappa strictly inside (1/mu, 2/mu)
    ProofParameters proof{};
    Eigen::Vector3d p_eigenvalues = Eigen::Vector3d::Zero();
    Eigen::Vector3d q_eigenvalues = Eigen::Vector3d::Zero();

    /// Both gain conditions hold.
    bool passes() const { return ki_ok && kp_ok; }
};

inline CertificateReport check_gains(const controller::Gains &g, const DerivedConstants &d,
                                     double kappa, double r_const = 1.0) {
    if (!(g.kp > 0.0 && g.kd > 0.0 && g.ki > 0.0)) {
        throw ParameterError("check_gains: gains must be positive");
    }
    if (!(r_const > 0.0)) {
        throw ParameterError("check_gains: r_const must be positive");
    }
    CertificateReport r;
    r.gains = g;
    r.delta = d.delta;
    r.mu = d.mu;
    r.kappa = kappa;
    r.kappa_low = d.kappa_low;
    r.kappa_high = d.kappa_high;
    r.r_const = r_const;
    r.thresholds = gain_thresholds(g, d.delta, d.mu, kappa, r_const);
    r.ki_margin = r.thresholds.ki_upper - g.ki;
    r.kp_margin = g.kp - r.thresholds.kp_lower;
    r.ki_ok = r.ki_margin > 0.0;
    r.kp_ok = r.kp_margin > 0.0;
    r.kappa_ok = kappa > d.kappa_low && kappa < d.kappa_high;
    r.proof = proof_parameters(g, kappa, d.inertia_min, d.inertia_max);
    const LyapunovMatrices m = lyapunov_matrices(g, r.proof);
    r.p_eigenvalues = m.p_eigenvalues;
    r.q_eigenvalues = m.q_eigenvalues;
    return r;
}

namespace detail {

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

inline const char *flag(bool ok) { return ok ? "pass" : "fail"; }

} // namespace detail

/// key = value text, one entry per line, fixed order.
inline void write_report(std::ostream &os, const CertificateReport &r) {
    using detail::flag;
    using detail::num;
    os << "kp = " << num(r.gains.kp) << '\n'
       << "kd = " << num(r.gains.kd) << '\n'
       << "ki = " << num(r.gains.ki) << '\n'
       << "kc = " << num(r.gains.kc) << '\n'
       << "delta = " << num(r.delta) << '\n'
       << "mu = " << num(r.mu) << '\n'
       << "kappa = " << num(r.kappa) << '\n'
       << "kappa_range = (" << num(r.kappa_low) << ", " << num(r.kappa_high) << ")\n"
       << "kappa_in_range = " << (r.kappa_ok ? "yes" : "no") << '\n'
       << "r_const = " << num(r.r_const) << '\n'
       << "k1 = " << num(r.thresholds.k1) << '\n'
       << "k2 = " << num(r.thresholds.k2) << '\n'
       << "kp_lower = " << num(r.thresholds.kp_lower) << '\n'
       << "ki_upper = " << num(r.thresholds.ki_upper) << '\n'
       << "ki_margin = " << num(r.ki_margin) << '\n'
       << "kp_margin = " << num(r.kp_margin) << '\n'
       << "ki_condition = " << flag(r.ki_ok) << '\n'
       << "kp_condition = " << flag(r.kp_ok) << '\n'
       << "alpha = " << num(r.proof.alpha) << '\n'
       << "p_s_eigenvalues = " << num(r.p_eigenvalues(0)) << ", " << num(r.p_eigenvalues(1))
       << ", " << num(r.p_eigenvalues(2)) << '\n'
       << "p_s_definite = " << (r.p_eigenvalues(0) > 0.0 ? "yes" : "no") << '\n'
       << "q_s_eigenvalues = " << num(r.q_eigenvalues(0)) << ", " << num(r.q_eigenvalues(1))
       << ", " << num(r.q_eigenvalues(2)) << '\n'
       << "q_s_definite = " << (r.q_eigenvalues(0) > 0.0 ? "yes" : "no") << '\n'
       << "overall = " << flag(r.passes()) << '\n';
}

// -----------------------------------------------------------------------------
// Lyapunov monitor
// -----------------------------------------------------------------------------

struct MonitorPoint {
    double t = 0.0;
    double value = 0.0;       ///< W_s
    double change = 0.0;      ///< W_s(t) - W_s(t_prev); 0 for the first point
    double lower_bound = 0.0; ///< 1/2 lambda_min(P_s) |z_s|^2
    double z_norm = 0.0;      ///< |z_s|
};

struct Interval {
    double begin = 0.0;
    double end = 0.0;
};

struct MonitorResult {
    std::vector<MonitorPoint> points;
    /// Stretches where W_s grew while |z_s| was outside the terminal radius.
    std::vector<Interval> increases;
};

/**
 * W_s = k_p V + 1/2 <<w_e, w_e>> + gamma/2 <<v_I, v_I>> + alpha <<eta, w_e>>
 *       + beta <<v_I, w_e>> + sigma <<v_I, eta>>
 * along a recorded trajectory, with V = o_e^2 / 2, eta = -o_e,
 * v_I = o_I - integral_offset and <<a, b>> = I(theta_a) a b under the
 * nominal inertia. |z_s| uses the same metric norms, so the quadratic lower
 * bound 1/2 lambda_min(P_s) |z_s|^2 holds whenever I(theta_a) <= theta.
 */
inline MonitorResult lyapunov_monitor(const sim::Trajectory &traj, const NominalParams &n,
                                      const controller::Gains &g, const ProofParameters &pp,
                                      double terminal_radius, double integral_offset = 0.0) {
    const geometry::HoopInertia field(n.body);
    const double lambda_min = lyapunov_matrices(g, pp).p_eigenvalues(0);
    MonitorResult out;
    out.points.reserve(traj.samples.size());
    bool open = false;
    Interval current;
    for (const sim::Sample &s : traj.samples) {
        const double vi = s.integral - integral_offset;
        const double eta = -s.position_error;
        const double w = s.rate_error;
        const double inertia = field.value(s.state.actuator_angle);
        MonitorPoint p;
        p.t = s.t;
        p.value = g.kp * 0.5 * s.position_error * s.position_error +
                  inertia * (0.5 * w * w + 0.5 * pp.gamma * vi * vi + pp.alpha * eta * w +
                             pp.beta * vi * w + pp.sigma * vi * eta);
        p.z_norm = std::sqrt(inertia * (vi * vi + eta * eta + w * w));
        p.lower_bound = 0.5 * lambda_min * p.z_norm * p.z_norm;
        if (!out.points.empty()) {
            p.change = p.value - out.points.back().value;
        }
        const bool rising = !out.points.empty() && p.change > 0.0 && p.z_norm > terminal_radius;
        if (rising && !open) {
            current.begin = out.points.back().t;
            open = true;
        }
        if (open) {
            if (rising) {
                current.end = p.t;
            } else {
                out.increases.push_back(current);
                open = false;
            }
        }
        out.points.push_back(p);
    }
    if (open) {
        out.increases.push_back(current);
    }
    return out;
}

} // namespace hoop::certificate

#endif // HOOP_CERTIFICATE_HPP
