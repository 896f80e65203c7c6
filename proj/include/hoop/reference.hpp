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

#ifndef HOOP_REFERENCE_HPP
#define HOOP_REFERENCE_HPP

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "hoop/error.hpp"

namespace hoop::reference {

/// Desired hoop-centre position and its first two derivatives at one instant.
struct Sample {
    double position = 0.0;     ///< o_ref [m]
    double velocity = 0.0;     ///< o_ref_dot [m/s]
    double acceleration = 0.0; ///< o_ref_ddot [m/s^2]
};

/// Hold the hoop at a point.
struct Constant {
    double position = 0.0;

    Sample operator()(double /*t*/) const { return {position, 0.0, 0.0}; }
};

/// Constant rolling velocity.
struct Ramp {
    double start = 0.0;
    double velocity = 0.2;

    Sample operator()(double t) const { return {start + velocity * t, velocity, 0.0}; }
};

/// Sinusoidal rolling velocity o_ref_dot = A sin(W t), starting from rest.
struct Sinusoid {
    double start = 0.0;
    double amplitude = 0.3; ///< A [m/s]
    double frequency = 0.5; ///< W [rad/s]

    Sample operator()(double t) const {
        if (!(frequency > 0.0)) {
            throw DomainError("sinusoid reference needs a positive frequency");
        }
        const double phase = frequency * t;
        return {start + amplitude * (1.0 - std::cos(phase)) / frequency,
                amplitude * std::sin(phase), amplitude * frequency * std::cos(phase)};
    }
};

using Reference = std::variant<Constant, Ramp, Sinusoid>;

inline Sample sample(const Reference &ref, double t) {
    return std::visit([t](const auto &r) { return r(t); }, ref);
}

/// Scenario identifiers used by the CLI and config files.
inline std::string_view scenario_name(const Reference &ref) {
    struct Visitor {
        std::string_view operator()(const Constant &) const { return "fixed_point"; }
        std::string_view operator()(const Ramp &) const { return "ramp"; }
        std::string_view operator()(const Sinusoid &) const { return "sinusoid"; }
    };
    return std::visit(Visitor{}, ref);
}

/// Default-parameter reference for a scenario name, or nothing if unknown.
inline std::optional<Reference> from_scenario(std::string_view name) {
    if (name == "fixed_point") {
        return Reference{Constant{}};
    }
    if (name == "ramp") {
        return Reference{Ramp{}};
    }
    if (name == "sinusoid") {
        return Reference{Sinusoid{}};
    }
    return std::nullopt;
}

} // namespace hoop::reference

#endif // HOOP_REFERENCE_HPP
