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

#ifndef HOOP_CONFIG_HPP
#define HOOP_CONFIG_HPP

#include <cctype>
#include <charconv>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hoop/controller.hpp"
#include "hoop/error.hpp"
#include "hoop/params.hpp"
#include "hoop/reference.hpp"
#include "hoop/sim.hpp"

/**
 * Run configuration as flat "key = value" text grouped in [sections].
 *
 *   [plant]       hoop_mass hoop_inertia radius actuator_mass actuator_inertia
 *                 arm_length incline gravity output_disturbance
 *                 actuator_disturbance
 *   [controller]  mismatch kp kd ki kc feedforward
 *   [scenario]    name start velocity amplitude frequency
 *   [initial]     hoop_angle position hoop_rate actuator_angle actuator_rate
 *                 integral
 *   [sim]         dt t_end stride hold_period open_loop
 *   [certificate] velocity_bound kappa r_const
 *
 * Angles accept a "deg" suffix and are stored in radians. '#' and ';' start
 * comments. [summary] and [tool] sections (written into run manifests) are
 * accepted and ignored, so a manifest can be fed back as a config.
 */
namespace hoop::config {

inline constexpr const char *kToolVersion = "hoopctl 0.1.0";

struct RunSpec {
    PlantParams plant{};
    double mismatch = 1.5;
    controller::Gains gains{};
    controller::Options control{};

    std::string scenario = "fixed_point";
    double ref_start = 0.0;
    double ref_velocity = 0.2;
    double ref_amplitude = 0.3;
    double ref_frequency = 0.5;

    HoopState initial{0.0, -2.0, -0.1, 0.0, 0.1};
    double initial_integral = 0.0;

    double dt = 1e-3;
    double t_end = 30.0;
    int stride = 10;
    double hold_period = 0.0;
    bool open_loop = false;

    double velocity_bound = 10.0;
    std::optional<double> kappa;
    double r_const = 1.0;
};

inline reference::Reference make_reference(const RunSpec &spec) {
    if (spec.scenario == "fixed_point") {
        return reference::Constant{spec.ref_start};
    }
    if (spec.scenario == "ramp") {
        return reference::Ramp{spec.ref_start, spec.ref_velocity};
    }
    if (spec.scenario == "sinusoid") {
        if (!(spec.ref_frequency > 0.0)) {
            throw ParameterError("sinusoid frequency must be positive");
        }
        return reference::Sinusoid{spec.ref_start, spec.ref_amplitude, spec.ref_frequency};
    }
    throw ParameterError("unknown scenario '" + spec.scenario +
                         "' (expected fixed_point, ramp or sinusoid)");
}

inline sim::SimConfig to_sim_config(const RunSpec &spec) {
    if (!(std::isfinite(spec.mismatch) && spec.mismatch > 0.0)) {
        throw ParameterError("mismatch factor must be positive");
    }
    sim::SimConfig c;
    c.dt = spec.dt;
    c.t_end = spec.t_end;
    c.plant = spec.plant;
    c.nominal = believed(spec.plant, spec.mismatch);
    c.gains = spec.gains;
    c.control = spec.control;
    c.reference = make_reference(spec);
    c.initial = spec.initial;
    c.initial_integral = spec.initial_integral;
    c.stride = spec.stride;
    c.open_loop = spec.open_loop;
    c.hold_period = spec.hold_period;
    sim::validate(c);
    return c;
}

// -----------------------------------------------------------------------------
// Value parsing
// -----------------------------------------------------------------------------

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

inline std::optional<double> to_double(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        return std::nullopt;
    }
    return v;
}

inline std::string full_precision(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace detail

inline double parse_number(std::string_view text) {
    if (auto v = detail::to_double(text)) {
        return *v;
    }
    throw ConfigError("expected a number, got '" + std::string(text) + "'");
}

/// Radians, or degrees with a "deg" suffix ("20deg", "20 deg").
inline double parse_angle(std::string_view text) {
    std::string_view s = detail::trim(text);
    if (s.size() > 3 && s.substr(s.size() - 3) == "deg") {
        if (auto v = detail::to_double(s.substr(0, s.size() - 3))) {
            return deg_to_rad(*v);
        }
    } else if (auto v = detail::to_double(s)) {
        return *v;
    }
    throw ConfigError("expected an angle (radians, or degrees with 'deg'), got '" +
                      std::string(text) + "'");
}

inline bool parse_bool(std::string_view text) {
    const std::string_view s = detail::trim(text);
    if (s == "true" || s == "yes" || s == "on" || s == "1") {
        return true;
    }
    if (s == "false" || s == "no" || s == "off" || s == "0") {
        return false;
    }
    throw ConfigError("expected a boolean, got '" + std::string(text) + "'");
}

inline int parse_int(std::string_view text) {
    const std::string_view s = detail::trim(text);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        throw ConfigError("expected an integer, got '" + std::string(text) + "'");
    }
    return v;
}

// -----------------------------------------------------------------------------
// Key table
// -----------------------------------------------------------------------------

namespace detail {

struct Field {
    std::function<void(RunSpec &, std::string_view)> set;
    std::function<std::string(const RunSpec &)> get;
};

template <typename Member>
Field number(Member member) {
    return {[member](RunSpec &s, std::string_view v) { member(s) = parse_number(v); },
            [member](const RunSpec &s) { return full_precision(member(const_cast<RunSpec &>(s))); }};
}

template <typename Member>
Field angle(Member member) {
    return {[member](RunSpec &s, std::string_view v) { member(s) = parse_angle(v); },
            [member](const RunSpec &s) { return full_precision(member(const_cast<RunSpec &>(s))); }};
}

/// Ordered key table; the order is the manifest order.
inline const std::vector<std::pair<std::string, Field>> &fields() {
    static const std::vector<std::pair<std::string, Field>> table = [] {
        std::vector<std::pair<std::string, Field>> t;
        t.emplace_back("plant.hoop_mass", number([](RunSpec &s) -> double & { return s.plant.body.hoop_mass; }));
        t.emplace_back("plant.hoop_inertia", number([](RunSpec &s) -> double & { return s.plant.body.hoop_inertia; }));
        t.emplace_back("plant.radius", number([](RunSpec &s) -> double & { return s.plant.body.radius; }));
        t.emplace_back("plant.actuator_mass", number([](RunSpec &s) -> double & { return s.plant.body.actuator_mass; }));
        t.emplace_back("plant.actuator_inertia", number([](RunSpec &s) -> double & { return s.plant.body.actuator_inertia; }));
        t.emplace_back("plant.arm_length", number([](RunSpec &s) -> double & { return s.plant.body.arm_length; }));
        t.emplace_back("plant.incline", angle([](RunSpec &s) -> double & { return s.plant.incline; }));
        t.emplace_back("plant.gravity", number([](RunSpec &s) -> double & { return s.plant.gravity; }));
        t.emplace_back("plant.output_disturbance", number([](RunSpec &s) -> double & { return s.plant.output_disturbance; }));
        t.emplace_back("plant.actuator_disturbance", number([](RunSpec &s) -> double & { return s.plant.actuator_disturbance; }));

        t.emplace_back("controller.mismatch", number([](RunSpec &s) -> double & { return s.mismatch; }));
        t.emplace_back("controller.kp", number([](RunSpec &s) -> double & { return s.gains.kp; }));
        t.emplace_back("controller.kd", number([](RunSpec &s) -> double & { return s.gains.kd; }));
        t.emplace_back("controller.ki", number([](RunSpec &s) -> double & { return s.gains.ki; }));
        t.emplace_back("controller.kc", number([](RunSpec &s) -> double & { return s.gains.kc; }));
        t.emplace_back("controller.feedforward",
                       Field{[](RunSpec &s, std::string_view v) { s.control.reference_feedforward = parse_bool(v); },
                             [](const RunSpec &s) { return std::string(s.control.reference_feedforward ? "true" : "false"); }});

        t.emplace_back("scenario.name",
                       Field{[](RunSpec &s, std::string_view v) {
                                 const std::string name(trim(v));
                                 if (!reference::from_scenario(name)) {
                                     throw ConfigError("unknown scenario '" + name +
                                                       "' (expected fixed_point, ramp or sinusoid)");
                                 }
                                 s.scenario = name;
                             },
                             [](const RunSpec &s) { return s.scenario; }});
        t.emplace_back("scenario.start", number([](RunSpec &s) -> double & { return s.ref_start; }));
        t.emplace_back("scenario.velocity", number([](RunSpec &s) -> double & { return s.ref_velocity; }));
        t.emplace_back("scenario.amplitude", number([](RunSpec &s) -> double & { return s.ref_amplitude; }));
        t.emplace_back("scenario.frequency", number([](RunSpec &s) -> double & { return s.ref_frequency; }));

        t.emplace_back("initial.hoop_angle", angle([](RunSpec &s) -> double & { return s.initial.hoop_angle; }));
        t.emplace_back("initial.position", number([](RunSpec &s) -> double & { return s.initial.position; }));
        t.emplace_back("initial.hoop_rate", number([](RunSpec &s) -> double & { return s.initial.hoop_rate; }));
        t.emplace_back("initial.actuator_angle", angle([](RunSpec &s) -> double & { return s.initial.actuator_angle; }));
        t.emplace_back("initial.actuator_rate", number([](RunSpec &s) -> double & { return s.initial.actuator_rate; }));
        t.emplace_back("initial.integral", number([](RunSpec &s) -> double & { return s.initial_integral; }));

        t.emplace_back("sim.dt", number([](RunSpec &s) -> double & { return s.dt; }));
        t.emplace_back("sim.t_end", number([](RunSpec &s) -> double & { return s.t_end; }));
        t.emplace_back("sim.stride",
                       Field{[](RunSpec &s, std::string_view v) { s.stride = parse_int(v); },
                             [](const RunSpec &s) { return std::to_string(s.stride); }});
        t.emplace_back("sim.hold_period", number([](RunSpec &s) -> double & { return s.hold_period; }));
        t.emplace_back("sim.open_loop",
                       Field{[](RunSpec &s, std::string_view v) { s.open_loop = parse_bool(v); },
                             [](const RunSpec &s) { return std::string(s.open_loop ? "true" : "false"); }});

        t.emplace_back("certificate.velocity_bound", number([](RunSpec &s) -> double & { return s.velocity_bound; }));
        t.emplace_back("certificate.kappa",
                       Field{[](RunSpec &s, std::string_view v) {
                                 const std::string_view x = trim(v);
                                 if (x == "auto") {
                                     s.kappa.reset();
                                 } else {
                                     s.kappa = parse_number(x);
                                 }
                             },
                             [](const RunSpec &s) {
                                 return s.kappa ? full_precision(*s.kappa) : std::string("auto");
                             }});
        t.emplace_back("certificate.r_const", number([](RunSpec &s) -> double & { return s.r_const; }));
        return t;
    }();
    return table;
}

inline const Field *find_field(std::string_view key) {
    for (const auto &[name, field] : fields()) {
        if (name == key) {
            return &field;
        }
    }
    return nullptr;
}

inline bool ignored_section(std::string_view section) {
    return section == "summary" || section == "tool";
}

} // namespace detail

/// Sets one "section.key" entry.
inline void set(RunSpec &spec, std::string_view key, std::string_view value) {
    const detail::Field *field = detail::find_field(key);
    if (!field) {
        throw ConfigError("unknown key '" + std::string(key) + "'");
    }
    field->set(spec, value);
}

inline std::string get(const RunSpec &spec, std::string_view key) {
    const detail::Field *field = detail::find_field(key);
    if (!field) {
        throw ConfigError("unknown key '" + std::string(key) + "'");
    }
    return field->get(spec);
}

/// Applies "section.key=value" (command-line override syntax).
inline void apply_override(RunSpec &spec, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigError("override must look like section.key=value, got '" +
                          std::string(assignment) + "'");
    }
    set(spec, detail::trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

/// Parses config text on top of `spec`. Errors carry the offending line.
inline void apply_text(RunSpec &spec, std::string_view text) {
    std::string section;
    int line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find_first_of("#;"); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = detail::trim(line);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                throw ConfigError("malformed section header", line_no);
            }
            section = std::string(detail::trim(line.substr(1, line.size() - 2)));
            continue;
        }
        if (detail::ignored_section(section)) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("expected 'key = value'", line_no);
        }
        if (section.empty()) {
            throw ConfigError("key outside of any [section]", line_no);
        }
        const std::string key = section + "." + std::string(detail::trim(line.substr(0, eq)));
        try {
            set(spec, key, line.substr(eq + 1));
        } catch (const ConfigError &e) {
            throw ConfigError(e.what(), line_no);
        }
    }
}

inline RunSpec parse(std::string_view text) {
    RunSpec spec;
    apply_text(spec, text);
    return spec;
}

/// Writes every key in table order, grouped by section, full precision.
inline void write(std::ostream &os, const RunSpec &spec) {
    std::string section;
    for (const auto &[name, field] : detail::fields()) {
        const auto dot = name.find('.');
        const std::string sec = name.substr(0, dot);
        if (sec != section) {
            if (!section.empty()) {
                os << '\n';
            }
            os << '[' << sec << "]\n";
            section = sec;
        }
        os << name.substr(dot + 1) << " = " << field.get(spec) << '\n';
    }
}

/// Run manifest: the full config echo plus tool version and summary metrics.
inline void write_manifest(std::ostream &os, const RunSpec &spec, const sim::Summary &summary,
                           std::string_view status) {
    os << "# hoopctl run manifest; feed back with --config to reproduce\n";
    write(os, spec);
    os << "\n[tool]\nversion = " << kToolVersion << '\n';
    os << "\n[summary]\n"
       << "status = " << status << '\n'
       << "terminal_position_error = " << detail::full_precision(summary.terminal_position_error)
       << '\n'
       << "max_actuator_rate = " << detail::full_precision(summary.max_actuator_rate) << '\n'
       << "settling_time = " << detail::full_precision(summary.settling_time) << '\n';
}

} // namespace hoop::config

#endif // HOOP_CONFIG_HPP
