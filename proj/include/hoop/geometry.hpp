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

#ifndef HOOP_GEOMETRY_HPP
#define HOOP_GEOMETRY_HPP

#include <cmath>
#include <concepts>

#include "hoop/error.hpp"
#include "hoop/params.hpp"

/**
 * Riemannian structure on the circle.
 *
 * A kinetic energy 1/2 I(theta) w^2 on S defines the metric
 * <<zeta, eta>> = I(theta) zeta eta. In one dimension the Koszul formula
 * collapses to a single Christoffel symbol,
 *
 *     Gamma(theta) = (1 / 2I) dI/dtheta,
 *
 * and the Levi-Civita connection reads
 *
 *     nabla_zeta eta = d eta(zeta) + Gamma(theta) zeta eta.
 *
 * Torsion-freeness is automatic on S (all vector fields commute with
 * themselves), so only metricity is exercised.
 */
namespace hoop::geometry {

/// Anything that provides a positive inertia I(theta) and its derivative.
template <typename F>
concept InertiaField = requires(const F &f, double angle) {
    { f.value(angle) } -> std::convertible_to<double>;
    { f.derivative(angle) } -> std::convertible_to<double>;
};

/// Reduced inertia of the hoop seen through the actuator angle:
/// I(theta_a) = I_h + M r^2 - m_a^2 r^2 l^2 cos^2(theta_a) / (I_a + m_a l^2).
class HoopInertia {
public:
    explicit HoopInertia(const Body &body)
        : rolling_(body.rolling_inertia()), dip_(body.inertia_dip()) {}

    double value(double actuator_angle) const {
        const double c = std::cos(actuator_angle);
        return rolling_ - dip_ * c * c;
    }

    double derivative(double actuator_angle) const {
        return dip_ * std::sin(2.0 * actuator_angle);
    }

    double max() const { return rolling_; }
    double min() const { return rolling_ - dip_; }

    /// m_a^2 r^2 l^2 / (I_a + m_a l^2).
    double dip() const { return dip_; }

private:
    double rolling_;
    double dip_;
};

static_assert(InertiaField<HoopInertia>);

namespace detail {

inline void require_finite(double x, const char *what) {
    if (!std::isfinite(x)) {
        throw DomainError(what);
    }
}

} // namespace detail

/// Gamma^1_11 = I'(theta) / (2 I(theta)) [1/rad].
template <InertiaField F>
double christoffel(const F &field, double angle) {
    detail::require_finite(angle, "christoffel: non-finite angle");
    const double inertia = field.value(angle);
    if (!(inertia > 0.0)) {
        throw DomainError("christoffel: inertia field is not positive");
    }
    return field.derivative(angle) / (2.0 * inertia);
}

/**
 * Lowered covariant derivative I nabla_zeta eta for a vector field eta on S
 * carried along a curve with velocity zeta:
 *
 *     I(theta) eta_dot + I(theta) Gamma(theta) zeta eta.
 *
 * `eta_dot` is the plain time derivative of eta along the curve.
 */
template <InertiaField F>
double covariant_derivative(const F &field, double angle, double zeta, double eta_dot,
                            double eta) {
    detail::require_finite(zeta, "covariant_derivative: non-finite zeta");
    detail::require_finite(eta, "covariant_derivative: non-finite eta");
    detail::require_finite(eta_dot, "covariant_derivative: non-finite eta_dot");
    const double inertia = field.value(angle);
    return inertia * eta_dot + inertia * christoffel(field, angle) * zeta * eta;
}

/// Only the connection part, I Gamma zeta eta = 1/2 I'(theta) zeta eta.
template <InertiaField F>
double connection_term(const F &field, double angle, double zeta, double eta) {
    return 0.5 * field.derivative(angle) * zeta * eta;
}

/// Two vector fields X, Y sampled along a curve theta(t) on S.
struct MetricitySample {
    double angle = 0.0;  ///< theta
    double rate = 0.0;   ///< theta_dot, the transport direction
    double x = 0.0;
    double x_dot = 0.0;
    double y = 0.0;
    double y_dot = 0.0;
};

/**
 * |d/dt <<X, Y>> - <I nabla X, Y> - <I nabla Y, X>| at one sample.
 *
 * The left-hand side is expanded with the field derivative,
 * d/dt (I X Y) = I' theta_dot X Y + I (X_dot Y + X Y_dot). Vanishes up to
 * rounding for a metric connection.
 */
template <InertiaField F>
double metricity_residual(const F &field, const MetricitySample &s) {
    const double inertia = field.value(s.angle);
    const double lie = field.derivative(s.angle) * s.rate * s.x * s.y +
                       inertia * (s.x_dot * s.y + s.x * s.y_dot);
    const double lowered_x = covariant_derivative(field, s.angle, s.rate, s.x_dot, s.x);
    const double lowered_y = covariant_derivative(field, s.angle, s.rate, s.y_dot, s.y);
    return std::abs(lie - lowered_x * s.y - lowered_y * s.x);
}

} // namespace hoop::geometry

#endif // HOOP_GEOMETRY_HPP
