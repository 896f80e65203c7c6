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

#ifndef HOOP_CONTROLLER_HPP
#define HOOP_CONTROLLER_HPP

#include <cmath>

#include "hoop/error.hpp"
#include "hoop/geometry.hpp"
#include "hoop/params.hpp"
#include "hoop/reference.hpp"
#include "hoop/regularizer.hpp"

/**
 * Geometric PID outer loop.
 *
 * The integrator state o_I is a vector field on S transported by the
 * Levi-Civita connection of the nominal inertia,
 *
 *     I nabla_{omega_a} o_I = I eta_e,
 *
 * and the regularized input is
 *
 *     tau_tilde = -I(theta_a) (k_p eta_e + k_d omega_e + k_I o_I),
 *
 * with eta_e = -o_e the gradient of V(o_e) = o_e^2 / 2.
 */
namespace hoop::controller {

struct Gains {
    double kp = 16.0;
    double kd = 7.0;
    double ki = 4.0;
    /// Listed alongside the PID gains for the reference runs but enters no
    /// control law. Stored and logged only.
    double kc = 0.1;
};

inline void validate(const Gains &g) {
    if (!(std::isfinite(g.kp) && g.kp > 0.0 && std::isfinite(g.kd) && g.kd > 0.0 &&
          std::isfinite(g.ki) && g.ki > 0.0)) {
        throw ParameterError("gains k_p, k_d, k_I must be positive and finite");
    }
    if (!std::isfinite(g.kc)) {
        throw ParameterError("gain k_c must be finite");
    }
}

struct ControllerState {
    double integral = 0.0;      ///< o_I
    double last_shaped = 0.0;   ///< last tau_tilde, for logging
    double last_control = 0.0;  ///< last tau_u, for logging

    void reset() { *this = ControllerState{}; }
};

struct TrackingError {
    double position = 0.0; ///< o_e = o - o_ref [m]
    double rate = 0.0;     ///< omega_e = omega - omega_ref [rad/s]
    double gradient = 0.0; ///< eta_e = -o_e
};

/// Output tracking error. omega_ref = -o_ref_dot / r.
inline TrackingError error(const NominalParams &n, const HoopState &s,
                           const reference::Sample &ref) {
    TrackingError e;
    e.position = s.position - ref.position;
    e.rate = s.hoop_rate + ref.velocity / n.body.radius;
    e.gradient = -e.position;
    return e;
}

/// o_I_dot = eta_e - Gamma(theta_a) omega_a o_I.
inline double integrator_rate(const NominalParams &n, double actuator_angle, double actuator_rate,
                              double integral, double gradient) {
    const geometry::HoopInertia field(n.body);
    return gradient - geometry::christoffel(field, actuator_angle) * actuator_rate * integral;
}

inline double pid(const NominalParams &n, const Gains &g, double actuator_angle, double gradient,
                  double rate_error, double integral) {
    const double inertia = geometry::HoopInertia(n.body).value(actuator_angle);
    return -inertia * (g.kp * gradient + g.kd * rate_error + g.ki * integral);
}

struct Options {
    /// Add tau_ref = I(theta_a) omega_ref_dot to the plant input. Off by
    /// default so the integral action has to absorb it.
    bool reference_feedforward = false;
};

struct ControlOutput {
    double control = 0.0;        ///< tau_u, plant input [N m]
    double shaped = 0.0;         ///< tau_tilde, regularized input [N m]
    double integral_rate = 0.0;  ///< o_I_dot
    TrackingError error{};
};

/// One evaluation of the full loop: error, PID, regularization.
inline ControlOutput step(const NominalParams &n, const Gains &g, const HoopState &s,
                          const reference::Sample &ref, const ControllerState &cs,
                          const Options &opt = {}) {
    ControlOutput out;
    out.error = error(n, s, ref);
    out.shaped = pid(n, g, s.actuator_angle, out.error.gradient, out.error.rate, cs.integral);
    out.control = regularizer::regularize(n, s.actuator_angle, s.actuator_rate, out.error.rate,
                                          out.shaped);
    if (opt.reference_feedforward) {
        const double inertia = geometry::HoopInertia(n.body).value(s.actuator_angle);
        out.control += inertia * (-ref.acceleration / n.body.radius);
    }
    out.integral_rate = integrator_rate(n, s.actuator_angle, s.actuator_rate, cs.integral,
                                        out.error.gradient);
    return out;
}

} // namespace hoop::controller

#endif // HOOP_CONTROLLER_HPP
