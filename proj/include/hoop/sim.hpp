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

#ifndef HOOP_SIM_HPP
#define HOOP_SIM_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "hoop/controller.hpp"
#include "hoop/error.hpp"
#include "hoop/params.hpp"
#include "hoop/plant.hpp"
#include "hoop/reference.hpp"
#include "hoop/rk4.hpp"

namespace hoop::sim {

// =============================================================================
// Energy and the Lagrangian oracle
// =============================================================================

struct Energy {
    double kinetic = 0.0;   ///< [J]
    double potential = 0.0; ///< [J]

    double total() const { return kinetic + potential; }
};

/**
 * Mechanical energy rebuilt from the frame geometry rather than from the
 * reduced equations.
 *
 * In the incline frame the hoop centre is at (o, r) and moves with
 * (-r omega, 0). The actuator centre of mass sits at
 * (o + l sin(theta_a), r - l cos(theta_a)). Height is measured along
 * e_up = (sin(beta), cos(beta)).
 */
inline Energy energy(const PlantParams &p, const HoopState &s) {
    const Body &b = p.body;
    const double l = b.arm_length;
    const double sn = std::sin(s.actuator_angle);
    const double cs = std::cos(s.actuator_angle);

    const double centre_vx = -b.radius * s.hoop_rate;
    const double act_vx = centre_vx + l * cs * s.actuator_rate;
    const double act_vy = l * sn * s.actuator_rate;

    Energy e;
    e.kinetic = 0.5 * b.hoop_mass * centre_vx * centre_vx +
                0.5 * b.hoop_inertia * s.hoop_rate * s.hoop_rate +
                0.5 * b.actuator_mass * (act_vx * act_vx + act_vy * act_vy) +
                0.5 * b.actuator_inertia * s.actuator_rate * s.actuator_rate;

    const double up_x = std::sin(p.incline);
    const double up_y = std::cos(p.incline);
    const double centre_height = s.position * up_x + b.radius * up_y;
    const double act_height = (s.position + l * sn) * up_x + (b.radius - l * cs) * up_y;
    e.potential = p.gravity * (b.hoop_mass * centre_height + b.actuator_mass * act_height);
    return e;
}

struct Accelerations {
    double hoop = 0.0;     ///< omega_dot
    double actuator = 0.0; ///< omega_a_dot
};

/**
 * Accelerations from Euler-Lagrange in (theta, theta_a), with o slaved to
 * theta by rolling and every derivative of L = KE - PE taken numerically
 * from `energy`.
 *
 * The input enters as the internal hoop/actuator torque
 * tau_int = J tau_u / (J - m_a r l cos(theta_a)), which acts with +1 on the
 * hoop and -1 on the actuator. Disturbance torques are not part of the
 * physical model and are ignored here.
 */
inline Accelerations lagrangian_oracle(const PlantParams &p, const HoopState &s, double input) {
    using Vec2 = std::array<double, 2>;
    const Vec2 q0{s.hoop_angle, s.actuator_angle};

    const auto lagrangian = [&](const Vec2 &q, const Vec2 &v) {
        HoopState x;
        x.hoop_angle = q[0];
        x.position = s.position - p.body.radius * (q[0] - q0[0]);
        x.hoop_rate = v[0];
        x.actuator_angle = q[1];
        x.actuator_rate = v[1];
        const Energy e = energy(p, x);
        return e.kinetic - e.potential;
    };

    // Fourth-order central difference of f along coordinate i.
    const auto d_dx = [](auto &&f, Vec2 x, int i, double h) {
        const double x0 = x[i];
        const auto at = [&](double offset) {
            x[i] = x0 + offset;
            return f(x);
        };
        return (-at(2.0 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2.0 * h)) / (12.0 * h);
    };

    const double hq = 1e-3; // configuration step [rad]
    const double hv = 1e-1; // velocity step [rad/s]

    const Vec2 q = q0;
    const Vec2 v{s.hoop_rate, s.actuator_rate};

    // Momentum p_i(q, v) = dL/dv_i.
    const auto momentum = [&](int i, const Vec2 &qq, const Vec2 &vv) {
        return d_dx([&](const Vec2 &w) { return lagrangian(qq, w); }, vv, i, hv);
    };

    double mass[2][2];
    double bias[2];
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            mass[i][j] = d_dx([&](const Vec2 &w) { return momentum(i, q, w); }, v, j, hv);
        }
        // d/dt p_i minus M qdd = sum_j dp_i/dq_j v_j.
        double transport = 0.0;
        for (int j = 0; j < 2; ++j) {
            transport += d_dx([&](const Vec2 &qq) { return momentum(i, qq, v); }, q, j, hq) * v[j];
        }
        const double dl_dq = d_dx([&](const Vec2 &qq) { return lagrangian(qq, v); }, q, i, hq);
        bias[i] = transport - dl_dq;
    }

    const Body &b = p.body;
    const double pivot = b.actuator_pivot_inertia();
    const double internal = pivot * input / (pivot - b.coupling() * std::cos(s.actuator_angle));
    const double force[2] = {internal - bias[0], -internal - bias[1]};

    const double det = mass[0][0] * mass[1][1] - mass[0][1] * mass[1][0];
    const double scale = std::abs(mass[0][0] * mass[1][1]) + std::abs(mass[0][1] * mass[1][0]);
    if (!(std::abs(det) > 1e-12 * scale)) {
        throw ParameterError("lagrangian_oracle: singular mass matrix");
    }
    Accelerations a;
    a.hoop = (mass[1][1] * force[0] - mass[0][1] * force[1]) / det;
    a.actuator = (mass[0][0] * force[1] - mass[1][0] * force[0]) / det;
    return a;
}

// =============================================================================
// Closed-loop simulation
// =============================================================================

struct SimConfig {
    double dt = 1e-3;   ///< [s]
    double t_end = 30.0; ///< [s]
    PlantParams plant{};
    NominalParams nominal{};
    controller::Gains gains{};
    controller::Options control{};
    reference::Reference reference = reference::Constant{};
    HoopState initial{0.0, -2.0, -0.1, 0.0, 0.1};
    double initial_integral = 0.0;
    int stride = 10;
    /// Apply tau_u = 0 instead of the controller (the integrator still runs).
    bool open_loop = false;
    /// Zero-order-hold period for tau_u [s]; 0 evaluates the control inside
    /// every RK4 stage.
    double hold_period = 0.0;
};

inline void validate(const SimConfig &c) {
    if (!(std::isfinite(c.dt) && c.dt > 0.0)) {
        throw ParameterError("dt must be positive");
    }
    if (!(std::isfinite(c.t_end) && c.t_end > 0.0)) {
        throw ParameterError("t_end must be positive");
    }
    if (c.stride < 1) {
        throw ParameterError("record stride must be at least 1");
    }
    if (!(std::isfinite(c.hold_period) && c.hold_period >= 0.0)) {
        throw ParameterError("hold period must be non-negative");
    }
    if (!is_finite(c.initial) || !std::isfinite(c.initial_integral)) {
        throw ParameterError("initial state must be finite");
    }
    validate(c.plant);
    validate(c.nominal);
    controller::validate(c.gains);
}

struct Sample {
    double t = 0.0;
    HoopState state{};
    double integral = 0.0;      ///< o_I
    double reference = 0.0;     ///< o_ref
    double position_error = 0.0;
    double rate_error = 0.0;
    double control = 0.0;       ///< tau_u
    double shaped = 0.0;        ///< tau_tilde
    double energy = 0.0;        ///< true mechanical energy [J]
};

struct Trajectory {
    double dt = 0.0;
    int stride = 1;
    std::vector<Sample> samples;
};

/// Non-finite or runaway state. Carries the failure time and the last state
/// that was still finite.
class DivergenceError : public Error {
public:
    DivergenceError(double time, const HoopState &last, double last_integral)
        : Error("simulation diverged at t = " + std::to_string(time) + " s"), time_(time),
          last_(last), last_integral_(last_integral) {}

    double time() const noexcept { return time_; }
    const HoopState &last_state() const noexcept { return last_; }
    double last_integral() const noexcept { return last_integral_; }

private:
    double time_;
    HoopState last_;
    double last_integral_;
};

/// Any state component beyond this magnitude counts as divergence.
inline constexpr double kDivergenceBound = 1e6;

namespace detail {

using Augmented = std::array<double, 6>; // theta, o, omega, theta_a, omega_a, o_I

inline HoopState unpack(const Augmented &x) { return {x[0], x[1], x[2], x[3], x[4]}; }

inline bool runaway(const Augmented &x) {
    return std::any_of(x.begin(), x.end(), [](double v) {
        return !std::isfinite(v) || std::abs(v) > kDivergenceBound;
    });
}

inline std::int64_t step_count(double t_end, double dt) {
    return static_cast<std::int64_t>(std::floor(t_end / dt * (1.0 + 1e-12)));
}

} // namespace detail

/// Number of recorded samples for a config.
inline std::int64_t sample_count(const SimConfig &c) {
    return detail::step_count(c.t_end, c.dt) / c.stride + 1;
}

/**
 * Fixed-step RK4 on the augmented state (theta, o, omega, theta_a, omega_a,
 * o_I). The control is recomputed from each stage state unless a hold
 * period is configured. Deterministic: time is i * dt, never accumulated.
 */
inline Trajectory integrate(const SimConfig &cfg) {
    validate(cfg);
    using detail::Augmented;

    const auto control_at = [&cfg](double t, const Augmented &x) {
        controller::ControllerState cs;
        cs.integral = x[5];
        return controller::step(cfg.nominal, cfg.gains, detail::unpack(x),
                                reference::sample(cfg.reference, t), cs, cfg.control);
    };

    const bool hold = cfg.hold_period > 0.0;
    const std::int64_t hold_steps =
        hold ? std::max<std::int64_t>(1, std::llround(cfg.hold_period / cfg.dt)) : 1;
    double held_input = 0.0;

    const auto rhs = [&](double t, const Augmented &x) {
        const HoopState s = detail::unpack(x);
        const controller::ControlOutput out = control_at(t, x);
        double input = hold ? held_input : out.control;
        if (cfg.open_loop) {
            input = 0.0;
        }
        const HoopState r = plant::derivative(cfg.plant, s, input);
        return Augmented{r.hoop_angle, r.position, r.hoop_rate, r.actuator_angle,
                         r.actuator_rate, out.integral_rate};
    };

    const auto record = [&](double t, const Augmented &x) {
        const controller::ControlOutput out = control_at(t, x);
        Sample smp;
        smp.t = t;
        smp.state = detail::unpack(x);
        smp.integral = x[5];
        smp.reference = reference::sample(cfg.reference, t).position;
        smp.position_error = out.error.position;
        smp.rate_error = out.error.rate;
        smp.control = cfg.open_loop ? 0.0 : (hold ? held_input : out.control);
        smp.shaped = out.shaped;
        smp.energy = energy(cfg.plant, smp.state).total();
        return smp;
    };

    Trajectory traj;
    traj.dt = cfg.dt;
    traj.stride = cfg.stride;
    traj.samples.reserve(static_cast<std::size_t>(sample_count(cfg)));

    const std::int64_t steps = detail::step_count(cfg.t_end, cfg.dt);
    Augmented x{cfg.initial.hoop_angle,     cfg.initial.position,
                cfg.initial.hoop_rate,      cfg.initial.actuator_angle,
                cfg.initial.actuator_rate,  cfg.initial_integral};

    for (std::int64_t i = 0;; ++i) {
        const double t = static_cast<double>(i) * cfg.dt;
        if (hold && i % hold_steps == 0) {
            held_input = control_at(t, x).control;
        }
        if (i % cfg.stride == 0) {
            traj.samples.push_back(record(t, x));
        }
        if (i == steps) {
            break;
        }
        const Augmented next = rk4_step(rhs, t, x, cfg.dt);
        if (detail::runaway(next)) {
            throw DivergenceError(static_cast<double>(i + 1) * cfg.dt, detail::unpack(x), x[5]);
        }
        x = next;
    }
    return traj;
}

// =============================================================================
// Summaries and export
// =============================================================================

struct Summary {
    double terminal_position_error = 0.0; ///< |o_e| at t_end [m]
    double max_actuator_rate = 0.0;       ///< max |omega_a| [rad/s]
    /// First time after which |o_e| stays below the tolerance; infinity if
    /// the run never settles.
    double settling_time = std::numeric_limits<double>::infinity();
};

inline Summary summarize(const Trajectory &traj, double settle_tolerance = 0.01) {
    Summary s;
    if (traj.samples.empty()) {
        return s;
    }
    s.terminal_position_error = std::abs(traj.samples.back().position_error);
    for (const Sample &smp : traj.samples) {
        s.max_actuator_rate = std::max(s.max_actuator_rate, std::abs(smp.state.actuator_rate));
    }
    // Walk back from the end to the last violation.
    for (std::size_t k = traj.samples.size(); k-- > 0;) {
        if (std::abs(traj.samples[k].position_error) >= settle_tolerance) {
            if (k + 1 < traj.samples.size()) {
                s.settling_time = traj.samples[k + 1].t;
            }
            return s;
        }
    }
    s.settling_time = traj.samples.front().t;
    return s;
}

inline constexpr const char *kCsvHeader =
    "t,theta,o,omega,theta_a,omega_a,o_I,o_e,omega_e,tau_u,energy";

namespace detail {

inline std::string full_precision(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace detail

/// CSV with the fixed header above, one row per recorded sample.
inline void write_csv(std::ostream &os, const Trajectory &traj) {
    using detail::full_precision;
    os << kCsvHeader << '\n';
    for (const Sample &s : traj.samples) {
        os << full_precision(s.t) << ',' << full_precision(s.state.hoop_angle) << ','
           << full_precision(s.state.position) << ',' << full_precision(s.state.hoop_rate) << ','
           << full_precision(s.state.actuator_angle) << ','
           << full_precision(s.state.actuator_rate) << ',' << full_precision(s.integral) << ','
           << full_precision(s.position_error) << ',' << full_precision(s.rate_error) << ','
           << full_precision(s.control) << ',' << full_precision(s.energy) << '\n';
    }
}

} // namespace hoop::sim

#endif // HOOP_SIM_HPP
