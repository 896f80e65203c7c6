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

#ifndef HOOP_PARAMS_HPP
#define HOOP_PARAMS_HPP

#include <cmath>
#include <numbers>

#include "hoop/error.hpp"

namespace hoop {

inline constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Wraps an angle to [-pi, pi). Only used for reporting; dynamics keep
/// angles unbounded.
inline double wrap_angle(double angle) {
    const double two_pi = 2.0 * std::numbers::pi;
    double wrapped = std::fmod(angle + std::numbers::pi, two_pi);
    if (wrapped < 0.0) {
        wrapped += two_pi;
    }
    return wrapped - std::numbers::pi;
}

/**
 * Mass geometry of the hoop and its internal actuator.
 *
 * The actuator centre of mass sits at a constant distance `arm_length` from
 * the geometric centre of the hoop, so its configuration lives on the circle.
 * Defaults are the reference robot: a 3 mm plastic hoop with a heavy
 * pendulum/cart actuator.
 */
struct Body {
    double hoop_mass = 1.00;         ///< [kg]
    double hoop_inertia = 0.021;     ///< [kg m^2] about the hoop centre
    double radius = 0.18;            ///< [m]
    double actuator_mass = 3.28;     ///< [kg]
    double actuator_inertia = 0.035; ///< [kg m^2] about the actuator COM
    double arm_length = 0.14;        ///< [m] hoop centre to actuator COM

    double total_mass() const { return hoop_mass + actuator_mass; }

    /// Actuator inertia about the hoop centre, I_a + m_a l^2.
    double actuator_pivot_inertia() const {
        return actuator_inertia + actuator_mass * arm_length * arm_length;
    }

    /// m_a r l, the kinetic coupling between hoop and actuator rotation.
    double coupling() const { return actuator_mass * radius * arm_length; }

    /// Rolling inertia with the actuator locked at the hoop centre, I_h + M r^2.
    double rolling_inertia() const {
        return hoop_inertia + total_mass() * radius * radius;
    }

    /// m_a^2 r^2 l^2 / (I_a + m_a l^2): amplitude of the cos^2 dip in the
    /// reduced inertia.
    double inertia_dip() const {
        const double c = coupling();
        return c * c / actuator_pivot_inertia();
    }
};

/// True physical constants of the robot and its environment.
struct PlantParams {
    Body body{};
    double incline = deg_to_rad(20.0); ///< beta [rad], unknown to the controller
    double gravity = 9.81;             ///< [m/s^2]
    double output_disturbance = 0.0;   ///< Delta_s [N m]
    double actuator_disturbance = 0.0; ///< Delta_a [N m]
};

/// Parameters the controller believes in. Incline and disturbances are not
/// available to it.
struct NominalParams {
    Body body{};
    double gravity = 9.81;
};

/**
 * Builds the controller's belief from the true plant: hoop mass, hoop
 * inertia, actuator mass, actuator inertia and arm length are multiplied by
 * `mismatch`; the radius and gravity are taken as known.
 */
inline NominalParams believed(const PlantParams &plant, double mismatch) {
    NominalParams n;
    n.body = plant.body;
    n.body.hoop_mass *= mismatch;
    n.body.hoop_inertia *= mismatch;
    n.body.actuator_mass *= mismatch;
    n.body.actuator_inertia *= mismatch;
    n.body.arm_length *= mismatch;
    n.gravity = plant.gravity;
    return n;
}

/// Nominal parameters that coincide with the plant (no mismatch).
inline NominalParams exact_model(const PlantParams &plant) { return believed(plant, 1.0); }

namespace detail {

inline void require(bool ok, const char *what) {
    if (!ok) {
        throw ParameterError(what);
    }
}

inline void validate_body(const Body &b) {
    require(std::isfinite(b.hoop_mass) && b.hoop_mass > 0.0, "hoop mass must be positive");
    require(std::isfinite(b.hoop_inertia) && b.hoop_inertia > 0.0, "hoop inertia must be positive");
    require(std::isfinite(b.radius) && b.radius > 0.0, "radius must be positive");
    require(std::isfinite(b.actuator_mass) && b.actuator_mass > 0.0,
            "actuator mass must be positive");
    require(std::isfinite(b.actuator_inertia) && b.actuator_inertia > 0.0,
            "actuator inertia must be positive");
    require(std::isfinite(b.arm_length) && b.arm_length > 0.0, "arm length must be positive");
    // Reduced inertia minimum over theta_a (at cos^2 = 1).
    require(b.rolling_inertia() > b.inertia_dip(),
            "inertia condition violated: I_h + M r^2 must exceed m_a^2 r^2 l^2 / (I_a + m_a l^2)");
}

} // namespace detail

inline void validate(const PlantParams &p) {
    detail::validate_body(p.body);
    detail::require(p.body.arm_length < p.body.radius,
                    "actuator centre of mass must lie inside the hoop (l < r)");
    detail::require(std::isfinite(p.incline) && std::abs(p.incline) < std::numbers::pi / 2.0,
                    "incline must lie in (-pi/2, pi/2)");
    detail::require(std::isfinite(p.gravity) && p.gravity >= 0.0, "gravity must be non-negative");
    detail::require(std::isfinite(p.output_disturbance) && std::isfinite(p.actuator_disturbance),
                    "disturbances must be finite");
}

/// The controller's model has no l < r requirement: it is a belief, not a
/// physical body.
inline void validate(const NominalParams &n) {
    detail::validate_body(n.body);
    detail::require(std::isfinite(n.gravity) && n.gravity >= 0.0, "gravity must be non-negative");
}

/// Point of the state space S x R x R x S x R. Angles are unbounded reals.
struct HoopState {
    double hoop_angle = 0.0;     ///< theta [rad]
    double position = 0.0;       ///< o [m] along the incline
    double hoop_rate = 0.0;      ///< omega [rad/s]
    double actuator_angle = 0.0; ///< theta_a [rad]
    double actuator_rate = 0.0;  ///< omega_a [rad/s]

    bool operator==(const HoopState &) const = default;
};

inline bool is_finite(const HoopState &s) {
    return std::isfinite(s.hoop_angle) && std::isfinite(s.position) &&
           std::isfinite(s.hoop_rate) && std::isfinite(s.actuator_angle) &&
           std::isfinite(s.actuator_rate);
}

} // namespace hoop

#endif // HOOP_PARAMS_HPP
