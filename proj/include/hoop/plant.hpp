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

#ifndef HOOP_PLANT_HPP
#define HOOP_PLANT_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "hoop/error.hpp"
#include "hoop/geometry.hpp"
#include "hoop/params.hpp"

/**
 * Reduced equations of motion of the hoop robot on an incline.
 *
 * The no-slip constraint o_dot = -r omega eliminates the contact force and
 * the actuator interaction force, leaving two coupled second-order equations
 * in (theta, theta_a):
 *
 *   I(theta_a) omega_dot   = -m_a r l sin(theta_a) omega_a^2 + tau_g^w + Delta_s + tau_u
 *   I(theta_a) omega_a_dot = -(m_a^2 r^2 l^2 sin cos / J) omega_a^2
 *                            + tau_g^wa + Delta_a + B(theta_a) tau_u
 *
 * with J = I_a + m_a l^2. Sign conventions: e2 is the outward surface
 * normal, gravity points along -(sin(beta) e1 + cos(beta) e2), theta and
 * theta_a are counter-clockwise and c2 points from the actuator centre of
 * mass towards the hoop centre.
 */
namespace hoop::plant {

struct GravityTorques {
    double output = 0.0;   ///< tau_g^w [N m]
    double actuator = 0.0; ///< tau_g^wa [N m]
};

inline GravityTorques gravity_torques(const PlantParams &p, double actuator_angle) {
    const Body &b = p.body;
    const double pivot = b.actuator_pivot_inertia();
    const double c = std::cos(actuator_angle);
    const double tilt = std::sin(actuator_angle + p.incline);
    const double m_a = b.actuator_mass;
    const double l = b.arm_length;

    GravityTorques t;
    t.output = b.radius * b.total_mass() * p.gravity * std::sin(p.incline) -
               m_a * m_a * b.radius * l * l * p.gravity / pivot * c * tilt;
    const double inertia = geometry::HoopInertia(b).value(actuator_angle);
    t.actuator = b.coupling() * c / pivot * t.output - inertia * (m_a * p.gravity * l * tilt / pivot);
    return t;
}

/// B(theta_a): how the single input tau_u is felt by the actuator channel.
inline double coupling_gain(const Body &b, double actuator_angle) {
    const double pivot = b.actuator_pivot_inertia();
    const double c = std::cos(actuator_angle);
    const double denominator = pivot - b.coupling() * c;
    if (std::abs(denominator) < 1e-12) {
        throw SingularityError("coupling_gain: I_a + m_a l^2 - m_a r l cos(theta_a) vanishes");
    }
    return b.coupling() * c / pivot -
           geometry::HoopInertia(b).value(actuator_angle) / denominator;
}

inline double coupling_gain(const PlantParams &p, double actuator_angle) {
    return coupling_gain(p.body, actuator_angle);
}

/// Internal hoop/actuator torque tau_c + tau_fc that produces the reduced input
/// tau_u.
inline double interaction_torque(const Body &b, double actuator_angle, double input) {
    const double pivot = b.actuator_pivot_inertia();
    return pivot * input / (pivot - b.coupling() * std::cos(actuator_angle));
}

/// Time derivative of the state. The rate of each field is stored in the
/// field of the same name.
inline HoopState derivative(const PlantParams &p, const HoopState &s, double input) {
    if (!std::isfinite(input)) {
        throw DomainError("plant::derivative: non-finite input torque");
    }
    const Body &b = p.body;
    const double angle = s.actuator_angle;
    const double w_a = s.actuator_rate;
    const double inertia = geometry::HoopInertia(b).value(angle);
    const GravityTorques grav = gravity_torques(p, angle);
    const double sn = std::sin(angle);
    const double cs = std::cos(angle);

    HoopState rate;
    rate.hoop_angle = s.hoop_rate;
    rate.position = -b.radius * s.hoop_rate;
    rate.hoop_rate =
        (-b.coupling() * sn * w_a * w_a + grav.output + p.output_disturbance + input) / inertia;
    rate.actuator_angle = w_a;
    rate.actuator_rate = (-b.inertia_dip() * sn * cs * w_a * w_a + grav.actuator +
                          p.actuator_disturbance + coupling_gain(b, angle) * input) /
                         inertia;
    return rate;
}

/// Actuator torque balance under output-zeroing control (hoop held at rest,
/// tau_u = -(tau_g^w + Delta_s)): tau_g^wa + Delta_a - B (tau_g^w + Delta_s).
inline double equilibrium_residual(const PlantParams &p, double actuator_angle) {
    const GravityTorques grav = gravity_torques(p, actuator_angle);
    return grav.actuator + p.actuator_disturbance -
           coupling_gain(p.body, actuator_angle) * (grav.output + p.output_disturbance);
}

struct Equilibrium {
    std::optional<double> actuator_angle; ///< theta_a*, empty when none exists
    double max_incline = 0.0;             ///< beta_max [rad]
};

/// Steepest incline that admits an actuator equilibrium, asin(m_a l / (M r)).
inline double max_incline(const Body &b) {
    const double ratio = b.actuator_mass * b.arm_length / (b.total_mass() * b.radius);
    return std::asin(std::min(ratio, 1.0));
}

/**
 * Actuator rest angle that holds the hoop still on the incline.
 *
 * Bisection on the branch theta_a + beta in [-pi/2, pi/2], which contains
 * the stable (hanging-side) equilibrium. With zero disturbance a root exists
 * exactly when m_a l / (M r) >= |sin(beta)|.
 */
inline Equilibrium actuator_equilibrium(const PlantParams &p) {
    validate(p);
    Equilibrium eq;
    eq.max_incline = max_incline(p.body);

    double lo = -std::numbers::pi / 2.0 - p.incline;
    double hi = std::numbers::pi / 2.0 - p.incline;
    double f_lo = equilibrium_residual(p, lo);
    double f_hi = equilibrium_residual(p, hi);
    if (f_lo == 0.0) {
        eq.actuator_angle = lo;
        return eq;
    }
    if (f_hi == 0.0) {
        eq.actuator_angle = hi;
        return eq;
    }
    if ((f_lo > 0.0) == (f_hi > 0.0)) {
        return eq;
    }
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = equilibrium_residual(p, mid);
        if (f_mid == 0.0) {
            lo = hi = mid;
            break;
        }
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    eq.actuator_angle = 0.5 * (lo + hi);
    return eq;
}

} // namespace hoop::plant

#endif // HOOP_PLANT_HPP
