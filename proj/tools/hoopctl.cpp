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

// hoopctl: simulate the geometric PID hoop robot, check gain conditions,
// find the actuator equilibrium and sweep parameters.
//
// Exit codes: 0 ok, 1 run failure (divergence, failed condition, no
// equilibrium), 2 usage or configuration error.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "hoop/hoop.hpp"

namespace {

namespace fs = std::filesystem;
using hoop::config::RunSpec;

constexpr int kOk = 0;
constexpr int kRunFailure = 1;
constexpr int kUsage = 2;

/// Options shared by subcommands that build a RunSpec.
struct SpecOptions {
    std::string config_path;
    std::vector<std::string> overrides;
    std::optional<std::string> scenario;
    std::optional<std::string> beta;
    std::optional<double> mismatch;
    std::optional<double> dt;
    std::optional<double> t_end;
    std::optional<double> kp, kd, ki;
};

void add_spec_options(CLI::App *cmd, SpecOptions &o) {
    cmd->add_option("-c,--config", o.config_path, "config file (key = value with [sections])");
    cmd->add_option("--set", o.overrides, "override, e.g. --set plant.gravity=9.8 (repeatable)");
    cmd->add_option("--scenario", o.scenario, "fixed_point, ramp or sinusoid");
    cmd->add_option("--beta", o.beta, "incline angle (radians, or e.g. 20deg)");
    cmd->add_option("--mismatch", o.mismatch, "controller model scale factor");
    cmd->add_option("--dt", o.dt, "integration step [s]");
    cmd->add_option("--t-end", o.t_end, "horizon [s]");
    cmd->add_option("--kp", o.kp, "proportional gain");
    cmd->add_option("--kd", o.kd, "derivative gain");
    cmd->add_option("--ki", o.ki, "integral gain");
}

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw hoop::ConfigError("cannot read config file '" + path + "'");
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

RunSpec build_spec(const SpecOptions &o) {
    RunSpec spec;
    if (!o.config_path.empty()) {
        try {
            hoop::config::apply_text(spec, read_file(o.config_path));
        } catch (const hoop::ConfigError &e) {
            throw hoop::ConfigError(o.config_path + ": " + e.what());
        }
    }
    for (const std::string &a : o.overrides) {
        hoop::config::apply_override(spec, a);
    }
    if (o.scenario) hoop::config::set(spec, "scenario.name", *o.scenario);
    if (o.beta) hoop::config::set(spec, "plant.incline", *o.beta);
    if (o.mismatch) spec.mismatch = *o.mismatch;
    if (o.dt) spec.dt = *o.dt;
    if (o.t_end) spec.t_end = *o.t_end;
    if (o.kp) spec.gains.kp = *o.kp;
    if (o.kd) spec.gains.kd = *o.kd;
    if (o.ki) spec.gains.ki = *o.ki;
    return spec;
}

/// Validated simulation config; parameter problems are config errors here.
hoop::sim::SimConfig checked_sim_config(const RunSpec &spec) {
    try {
        return hoop::config::to_sim_config(spec);
    } catch (const hoop::ParameterError &e) {
        throw hoop::ConfigError(e.what());
    }
}

std::string fmt17(double v) { return hoop::config::detail::full_precision(v); }

void write_series(const fs::path &path, const char *header, const hoop::sim::Trajectory &traj,
                  double (*a)(const hoop::sim::Sample &), double (*b)(const hoop::sim::Sample &)) {
    std::ofstream os(path);
    os << header << '\n';
    for (const auto &s : traj.samples) {
        os << fmt17(s.t) << ',' << fmt17(a(s));
        if (b) {
            os << ',' << fmt17(b(s));
        }
        os << '\n';
    }
    if (!os) {
        throw hoop::Error("failed writing " + path.string());
    }
}

void print_summary(std::ostream &os, const hoop::sim::Summary &s) {
    os << "terminal_position_error = " << fmt17(s.terminal_position_error) << '\n'
       << "max_actuator_rate = " << fmt17(s.max_actuator_rate) << '\n'
       << "settling_time = " << fmt17(s.settling_time) << '\n';
}

// -----------------------------------------------------------------------------
// simulate
// -----------------------------------------------------------------------------

int cmd_simulate(const SpecOptions &o, const std::string &out_dir) {
    const RunSpec spec = build_spec(o);
    const hoop::sim::SimConfig cfg = checked_sim_config(spec);

    fs::create_directories(out_dir);
    const fs::path dir(out_dir);

    hoop::sim::Trajectory traj;
    try {
        traj = hoop::sim::integrate(cfg);
    } catch (const hoop::sim::DivergenceError &e) {
        std::ofstream manifest(dir / "manifest.ini");
        hoop::config::write_manifest(manifest, spec, hoop::sim::Summary{}, "diverged");
        const auto &s = e.last_state();
        std::cerr << "error: " << e.what() << "; last state theta=" << fmt17(s.hoop_angle)
                  << " o=" << fmt17(s.position) << " omega=" << fmt17(s.hoop_rate)
                  << " theta_a=" << fmt17(s.actuator_angle)
                  << " omega_a=" << fmt17(s.actuator_rate)
                  << " o_I=" << fmt17(e.last_integral()) << '\n';
        return kRunFailure;
    }
    const hoop::sim::Summary summary = hoop::sim::summarize(traj);

    {
        std::ofstream csv(dir / "trajectory.csv");
        hoop::sim::write_csv(csv, traj);
        if (!csv) {
            throw hoop::Error("failed writing trajectory.csv");
        }
    }
    using S = hoop::sim::Sample;
    write_series(dir / "position.csv", "t,o_ref,o", traj,
                 [](const S &s) { return s.reference; }, [](const S &s) { return s.state.position; });
    write_series(dir / "position_error.csv", "t,o_e", traj,
                 [](const S &s) { return s.position_error; }, nullptr);
    write_series(dir / "rate_error.csv", "t,omega_e", traj,
                 [](const S &s) { return s.rate_error; }, nullptr);
    write_series(dir / "actuator_rate.csv", "t,omega_a", traj,
                 [](const S &s) { return s.state.actuator_rate; }, nullptr);
    {
        std::ofstream manifest(dir / "manifest.ini");
        hoop::config::write_manifest(manifest, spec, summary, "ok");
    }

    std::cout << "scenario = " << spec.scenario << '\n'
              << "samples = " << traj.samples.size() << '\n';
    print_summary(std::cout, summary);
    std::cout << "output = " << dir.string() << '\n';
    return kOk;
}

// -----------------------------------------------------------------------------
// check-gains
// -----------------------------------------------------------------------------

struct Range {
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;

    std::vector<double> values() const {
        std::vector<double> v;
        const auto n = static_cast<long>(std::floor((stop - start) / step * (1.0 + 1e-12)));
        for (long i = 0; i <= n; ++i) {
            v.push_back(start + static_cast<double>(i) * step);
        }
        return v;
    }
};

Range parse_range(const std::string &text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) {
        parts.push_back(p);
    }
    if (parts.size() != 3) {
        throw hoop::ConfigError("range must look like start:stop:step, got '" + text + "'");
    }
    Range r{hoop::config::parse_number(parts[0]), hoop::config::parse_number(parts[1]),
            hoop::config::parse_number(parts[2])};
    if (!(r.step > 0.0) || r.stop < r.start) {
        throw hoop::ConfigError("range needs step > 0 and stop >= start");
    }
    return r;
}

double &gain_ref(hoop::controller::Gains &g, const std::string &name) {
    if (name == "kp") return g.kp;
    if (name == "kd") return g.kd;
    if (name == "ki") return g.ki;
    throw hoop::ConfigError("sweep gain must be kp, kd or ki, got '" + name + "'");
}

int cmd_check_gains(const SpecOptions &o, std::optional<double> velocity_bound,
                    std::optional<double> kappa_opt, std::optional<double> r_const,
                    const std::vector<std::string> &sweep) {
    RunSpec spec = build_spec(o);
    if (velocity_bound) spec.velocity_bound = *velocity_bound;
    if (kappa_opt) spec.kappa = *kappa_opt;
    if (r_const) spec.r_const = *r_const;

    const hoop::NominalParams nominal = hoop::believed(spec.plant, spec.mismatch);
    hoop::validate(nominal);
    const auto derived = hoop::certificate::derived_constants(nominal, spec.velocity_bound);
    const double kappa = spec.kappa.value_or(derived.kappa_mid());

    if (sweep.empty()) {
        const auto report = hoop::certificate::check_gains(spec.gains, derived, kappa, spec.r_const);
        std::cout << "velocity_bound = " << spec.velocity_bound << '\n';
        hoop::certificate::write_report(std::cout, report);
        return report.passes() ? kOk : kRunFailure;
    }

    if (sweep.size() != 2) {
        throw hoop::ConfigError("--sweep takes a gain name and a range, e.g. --sweep kp 1:100:1");
    }
    hoop::controller::Gains g = spec.gains;
    double &swept = gain_ref(g, sweep[0]);
    const Range range = parse_range(sweep[1]);
    bool all = true;
    std::cout << sweep[0] << ",kp_lower,kp_margin,ki_upper,ki_margin,kp_condition,ki_condition\n";
    for (double v : range.values()) {
        swept = v;
        const auto r = hoop::certificate::check_gains(g, derived, kappa, spec.r_const);
        all = all && r.passes();
        std::cout << hoop::certificate::detail::num(v) << ','
                  << hoop::certificate::detail::num(r.thresholds.kp_lower) << ','
                  << hoop::certificate::detail::num(r.kp_margin) << ','
                  << hoop::certificate::detail::num(r.thresholds.ki_upper) << ','
                  << hoop::certificate::detail::num(r.ki_margin) << ','
                  << hoop::certificate::detail::flag(r.kp_ok) << ','
                  << hoop::certificate::detail::flag(r.ki_ok) << '\n';
    }
    return all ? kOk : kRunFailure;
}

// -----------------------------------------------------------------------------
// equilibrium
// -----------------------------------------------------------------------------

int cmd_equilibrium(const SpecOptions &o) {
    const RunSpec spec = build_spec(o);
    hoop::validate(spec.plant);
    const auto eq = hoop::plant::actuator_equilibrium(spec.plant);
    std::cout << "incline_deg = " << hoop::rad_to_deg(spec.plant.incline) << '\n'
              << "max_incline_deg = " << hoop::rad_to_deg(eq.max_incline) << '\n';
    if (!eq.actuator_angle) {
        std::cout << "equilibrium = none (incline exceeds the maximum)\n";
        return kRunFailure;
    }
    std::cout << "actuator_angle = " << fmt17(*eq.actuator_angle) << '\n'
              << "actuator_angle_deg = " << hoop::rad_to_deg(*eq.actuator_angle) << '\n';
    return kOk;
}

// -----------------------------------------------------------------------------
// sweep
// -----------------------------------------------------------------------------

struct SweepRow {
    double value = 0.0;
    bool ok = false;
    hoop::sim::Summary summary{};
    double diverged_at = 0.0;
};

int cmd_sweep(const SpecOptions &o, const std::string &key, const std::string &range_text,
              unsigned jobs) {
    const RunSpec base = build_spec(o);
    const Range range = parse_range(range_text);
    const std::vector<double> values = range.values();

    // Build every config up front so config errors surface before any run.
    std::vector<hoop::sim::SimConfig> configs;
    for (double v : values) {
        RunSpec spec = base;
        hoop::config::set(spec, key, fmt17(v));
        configs.push_back(checked_sim_config(spec));
    }

    std::vector<SweepRow> rows(values.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < configs.size(); i = next++) {
            rows[i].value = values[i];
            try {
                rows[i].summary = hoop::sim::summarize(hoop::sim::integrate(configs[i]));
                rows[i].ok = true;
            } catch (const hoop::sim::DivergenceError &e) {
                rows[i].diverged_at = e.time();
            }
        }
    };
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(configs.size())));
    std::vector<std::thread> pool;
    for (unsigned j = 0; j + 1 < jobs; ++j) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &t : pool) {
        t.join();
    }

    bool all = true;
    std::cout << key << ",status,terminal_position_error,max_actuator_rate,settling_time\n";
    for (const SweepRow &r : rows) {
        all = all && r.ok;
        std::cout << fmt17(r.value) << ',';
        if (r.ok) {
            std::cout << "ok," << fmt17(r.summary.terminal_position_error) << ','
                      << fmt17(r.summary.max_actuator_rate) << ','
                      << fmt17(r.summary.settling_time) << '\n';
        } else {
            std::cout << "diverged@" << fmt17(r.diverged_at) << ",nan,nan,nan\n";
        }
    }
    return all ? kOk : kRunFailure;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Geometric PID control of a hoop robot"};
    app.set_version_flag("--version", std::string(hoop::config::kToolVersion));
    app.require_subcommand(1);

    SpecOptions sim_opts;
    std::string out_dir = "out";
    auto *simulate = app.add_subcommand("simulate", "run one closed-loop scenario");
    add_spec_options(simulate, sim_opts);
    simulate->add_option("-o,--out-dir", out_dir, "output directory")->capture_default_str();

    SpecOptions cg_opts;
    std::optional<double> velocity_bound, kappa, r_const;
    std::vector<std::string> gain_sweep;
    auto *check = app.add_subcommand("check-gains", "evaluate the gain conditions");
    add_spec_options(check, cg_opts);
    check->add_option("--velocity-bound", velocity_bound, "actuator speed bound k_X [rad/s]");
    check->add_option("--kappa", kappa, "kappa (default: middle of the admissible interval)");
    check->add_option("--r-const", r_const, "constant r in the k_p thresholds");
    check->add_option("--sweep", gain_sweep, "gain and range, e.g. --sweep kp 1:100:1")
        ->expected(2);

    SpecOptions eq_opts;
    auto *equilibrium = app.add_subcommand("equilibrium", "actuator equilibrium on the incline");
    add_spec_options(equilibrium, eq_opts);

    SpecOptions sw_opts;
    std::string sweep_key, sweep_range;
    unsigned jobs = 1;
    auto *sweep = app.add_subcommand("sweep", "simulate over a range of one config key");
    add_spec_options(sweep, sw_opts);
    sweep->add_option("--param", sweep_key, "config key, e.g. controller.kp")->required();
    sweep->add_option("--range", sweep_range, "start:stop:step")->required();
    sweep->add_option("-j,--jobs", jobs, "parallel runs")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*simulate) return cmd_simulate(sim_opts, out_dir);
        if (*check) return cmd_check_gains(cg_opts, velocity_bound, kappa, r_const, gain_sweep);
        if (*equilibrium) return cmd_equilibrium(eq_opts);
        if (*sweep) return cmd_sweep(sw_opts, sweep_key, sweep_range, jobs);
    } catch (const hoop::ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kUsage;
    } catch (const hoop::ParameterError &e) {
        std::cerr << "parameter error: " << e.what() << '\n';
        return kUsage;
    } catch (const hoop::Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRunFailure;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRunFailure;
    }
    return kUsage;
}
