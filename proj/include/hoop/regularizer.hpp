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

#ifndef HOOP_REGULARIZER_HPP
#define HOOP_REGULARIZER_HPP

#include <cmath>

#include "hoop/geometry.hpp"
#include "hoop/params.hpp"
#include "hoop/plant.hpp"

/**
 * Feedback regularization inner loop.
 *
 * Adds the velocity-quadratic and potential-shaping terms that turn the
 * output error equation into a simple mechanical system on S,
 *
 *     I(theta_a) nabla_{omega_a} omega_e = Delta_h + tau_tilde,
 *
 * where tau_tilde is the outer-loop input and Delta_h lumps whatever the
 * controller cannot see (incline, disturbances, reference acceleration,
 * parameter error). All coefficients come from the nominal model.
 */
namespace hoop::regularizer {

namespace detail {

/// m_a^2 r^2 l^2 sin(2 theta_a) / (2 (I_a + m_a l^2)) = 1/2 I'(theta_a).
inline double connection_coefficient(const Body &b, double actuator_angle) {
    return 0.5 * b.inertia_dip() * std::sin(2.0 * actuator_angle);
}

/// m_a^2 r l^2 g sin(2 theta_a) / (2 (I_a + m_a l^2)).
inline double potential_shaping(const NominalParams &n, double actuator_angle) {
    const Body &b = n.body;
    const double m_a = b.actuator_mass;
    const double l = b.arm_length;
    return m_a * m_a * b.radius * l * l * n.gravity * std::sin(2.0 * actuator_angle) /
           (2.0 * b.actuator_pivot_inertia());
}

} // namespace detail

/**
 * Plant input tau_u from the regularized input tau_tilde:
 *
 *   tau_u = -(1/2 I') omega_a omega_e + m_a r l sin(theta_a) omega_a^2
 *           + m_a^2 r l^2 g sin(2 theta_a) / (2 J) + tau_tilde.
 *
 * The first term injects the connection, the second cancels the
 * centripetal coupling and the third cancels the actuator-induced gravity
 * torque on flat ground.
 */
inline double regularize(const NominalParams &n, double actuator_angle, double actuator_rate,
                         double rate_error, double shaped_input) {
    const Body &b = n.body;
    return -detail::connection_coefficient(b, actuator_angle) * actuator_rate * rate_error +
           b.coupling() * std::sin(actuator_angle) * actuator_rate * actuator_rate +
           detail::potential_shaping(n, actuator_angle) + shaped_input;
}

struct ActuatorTerms {
    double shaped_gravity = 0.0; ///< tau_tilde_g^wa [N m]
    double coupling = 0.0;       ///< tau_a(omega_e, omega_a) [N m]
    /// B m_a r l sin(theta_a) omega_a^2: what the centripetal cancellation on
    /// the output channel leaks into the actuator channel.
    double centripetal = 0.0;
};

/**
 * Actuator-side terms of the regularized system,
 *
 *   I nabla_{omega_a} omega_a = tau_tilde_g^wa + Delta_a + tau_a + B tau_tilde.
 *
 * tau_a is bilinear in (omega_e, omega_a) and vanishes with omega_e. The
 * remaining velocity-quadratic leak is reported separately in `centripetal`,
 * so that with an exact model on flat ground
 *
 *   I nabla_{omega_a} omega_a = shaped_gravity + Delta_a + coupling + centripetal + B tau_tilde
 *
 * holds identically.
 */
inline ActuatorTerms regularized_actuator_terms(const NominalParams &n, double actuator_angle,
                                                double actuator_rate, double rate_error) {
    PlantParams flat;
    flat.body = n.body;
    flat.gravity = n.gravity;
    flat.incline = 0.0;
    const double gain = plant::coupling_gain(n.body, actuator_angle);

    ActuatorTerms t;
    t.shaped_gravity = plant::gravity_torques(flat, actuator_angle).actuator +
                       gain * detail::potential_shaping(n, actuator_angle);
    t.coupling = -gain * detail::connection_coefficient(n.body, actuator_angle) * actuator_rate *
                 rate_error;
    t.centripetal =
        gain * n.body.coupling() * std::sin(actuator_angle) * actuator_rate * actuator_rate;
    return t;
}

/**
 * Lumped constant residual Delta_h seen by the output channel with the
 * actuator at rest at `actuator_angle` and a constant reference:
 * tau_g^w (true) + Delta_s + nominal potential shaping. At a closed-loop
 * equilibrium the integral action must supply exactly -Delta_h.
 */
inline double lumped_residual(const PlantParams &p, const NominalParams &n, double actuator_angle) {
    return plant::gravity_torques(p, actuator_angle).output + p.output_disturbance +
           detail::potential_shaping(n, actuator_angle);
}

} // namespace hoop::regularizer

#endif // HOOP_REGULARIZER_HPP
