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

// Acceptance gate: one PASS/FAIL line per criterion.
//
//   acceptance          run every criterion
//   acceptance N [M..]  run only the listed criteria
//
// Exit status is 0 only if every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "hoop/hoop.hpp"
#include "support.hpp"

namespace {

using hoop::HoopState;
using hoop::PlantParams;
using hoop::testing::kPi;
using hoop::testing::uniform;

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string format(const char *fmt, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Reference experiment run on a 60 s horizon.
hoop::sim::SimConfig scenario(const std::string &name) {
    hoop::config::RunSpec spec;
    spec.scenario = name;
    spec.t_end = 60.0;
    return hoop::config::to_sim_config(spec);
}

struct TailStats {
    double max_position_error = 0.0;
    double max_rate_error = 0.0;
    double max_actuator_deviation = 0.0; ///< from the final actuator rate
    double max_actuator_rate = 0.0;      ///< over the whole run
    double actuator_range = 0.0;         ///< max - min actuator rate in the tail
};

TailStats tail_stats(const hoop::sim::Trajectory &traj, double from) {
    TailStats s;
    const double final_rate = traj.samples.back().state.actuator_rate;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto &x : traj.samples) {
        s.max_actuator_rate = std::max(s.max_actuator_rate, std::abs(x.state.actuator_rate));
        if (x.t < from) {
            continue;
        }
        s.max_position_error = std::max(s.max_position_error, std::abs(x.position_error));
        s.max_rate_error = std::max(s.max_rate_error, std::abs(x.rate_error));
        s.max_actuator_deviation =
            std::max(s.max_actuator_deviation, std::abs(x.state.actuator_rate - final_rate));
        lo = std::min(lo, x.state.actuator_rate);
        hi = std::max(hi, x.state.actuator_rate);
    }
    s.actuator_range = hi - lo;
    return s;
}

// Convergence thresholds shared by the fixed-point, ramp and disturbance runs.
Verdict convergence(const hoop::sim::SimConfig &cfg, double wall_budget) {
    const auto start = std::chrono::steady_clock::now();
    const auto traj = hoop::sim::integrate(cfg);
    const double wall = seconds_since(start);
    const TailStats s = tail_stats(traj, 25.0);
    const bool pass = s.max_position_error < 0.01 && s.max_rate_error < 0.05 &&
                      s.max_actuator_deviation < 0.05 && s.max_actuator_rate < 20.0 &&
                      wall < wall_budget;
    return {pass, format("t>=25s: max|o_e|=%.5g (<0.01) max|w_e|=%.5g (<0.05) "
                         "max|w_a-w_a(end)|=%.5g (<0.05); max|w_a|=%.4g (<20); wall %.2fs (<%.0fs)",
                         s.max_position_error, s.max_rate_error, s.max_actuator_deviation,
                         s.max_actuator_rate, wall, wall_budget)};
}

Verdict criterion_1() {
    PlantParams p;
    auto g = hoop::testing::rng(1001);
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const HoopState s = hoop::testing::random_state(g);
        const double u = uniform(g, -2.0, 2.0);
        const HoopState r = hoop::plant::derivative(p, s, u);
        const auto o = hoop::sim::lagrangian_oracle(p, s, u);
        worst = std::max({worst, std::abs(r.hoop_rate - o.hoop), std::abs(r.actuator_rate - o.actuator)});
    }
    const double wall = seconds_since(start);
    return {worst < 1e-6 && wall < 10.0,
            format("max abs deviation %.3g (<1e-6) over 1000 states, %.2fs (<10s)", worst, wall)};
}

Verdict criterion_2() {
    hoop::sim::SimConfig cfg;
    cfg.plant.gravity = 0.0;
    cfg.plant.incline = 0.0;
    cfg.nominal = hoop::exact_model(cfg.plant);
    cfg.open_loop = true;
    cfg.dt = 1e-3;
    cfg.t_end = 10.0;
    cfg.initial = {0.0, 0.0, 1.5, 0.4, -2.5};
    const auto traj = hoop::sim::integrate(cfg);
    const double e0 = traj.samples.front().energy;
    double drift = 0.0;
    for (const auto &s : traj.samples) {
        drift = std::max(drift, std::abs(s.energy - e0) / std::abs(e0));
    }
    return {drift < 1e-6, format("relative energy drift %.3g (<1e-6), g=0, 10s", drift)};
}

Verdict criterion_3() {
    const PlantParams p = hoop::testing::flat_plant();
    const hoop::NominalParams n = hoop::exact_model(p);
    const hoop::geometry::HoopInertia field(n.body);
    auto g = hoop::testing::rng(1003);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const HoopState s = hoop::testing::random_state(g);
        const double ref_velocity = uniform(g, -0.5, 0.5);
        const double shaped = uniform(g, -2.0, 2.0);
        const double rate_error = s.hoop_rate + ref_velocity / n.body.radius;
        const double u = hoop::regularizer::regularize(n, s.actuator_angle, s.actuator_rate,
                                                       rate_error, shaped);
        const HoopState r = hoop::plant::derivative(p, s, u);
        const double lhs = hoop::geometry::covariant_derivative(
            field, s.actuator_angle, s.actuator_rate, r.hoop_rate, rate_error);
        worst = std::max(worst, std::abs(lhs - shaped));
    }
    return {worst < 1e-10, format("max |I nabla w_e - tau_tilde| %.3g (<1e-10)", worst)};
}

Verdict criterion_4() {
    const double deg = hoop::rad_to_deg(hoop::plant::actuator_equilibrium(PlantParams{}).max_incline);
    return {std::abs(deg - 36.0) <= 1.0, format("beta_max %.4f deg (36 +/- 1)", deg)};
}

Verdict criterion_5() { return convergence(scenario("fixed_point"), 10.0); }

Verdict criterion_6() { return convergence(scenario("ramp"), 10.0); }

Verdict criterion_7() {
    const auto traj = hoop::sim::integrate(scenario("sinusoid"));
    const TailStats s = tail_stats(traj, 40.0);
    const bool pass =
        s.max_position_error < 0.05 && s.max_actuator_rate < 20.0 && s.actuator_range > 0.01;
    return {pass, format("last 20s: max|o_e|=%.5g (<0.05) w_a range=%.4g (>0.01); max|w_a|=%.4g (<20)",
                         s.max_position_error, s.actuator_range, s.max_actuator_rate)};
}

Verdict criterion_8() {
    hoop::sim::SimConfig cfg = scenario("fixed_point");
    cfg.plant.output_disturbance = 0.1;
    cfg.plant.actuator_disturbance = 0.05;
    const Verdict base = convergence(cfg, 10.0);
    const auto traj = hoop::sim::integrate(cfg);
    const auto &last = traj.samples.back();
    const double angle = last.state.actuator_angle;
    const double inertia = hoop::geometry::HoopInertia(cfg.nominal.body).value(angle);
    const double integral_term = -inertia * cfg.gains.ki * last.integral;
    const double residual = hoop::regularizer::lumped_residual(cfg.plant, cfg.nominal, angle);
    const double mismatch = std::abs(integral_term + residual) / std::abs(residual);
    return {base.pass && mismatch < 0.02,
            base.detail + format("; |-I k_I o_I + D_h|/|D_h| = %.3g (<0.02)", mismatch)};
}

Verdict criterion_9() {
    const auto traj = hoop::sim::integrate(scenario("fixed_point"));
    double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (const auto &s : traj.samples) {
        const double e = std::abs(s.position_error);
        if (e > 1e-6 && e < 0.5) {
            const double y = std::log(e);
            n += 1;
            sx += s.t;
            sy += y;
            sxx += s.t * s.t;
            sxy += s.t * y;
            syy += y * y;
        }
    }
    const double cov = sxy - sx * sy / n;
    const double vx = sxx - sx * sx / n;
    const double vy = syy - sy * sy / n;
    const double slope = cov / vx;
    const double r2 = cov * cov / (vx * vy);
    return {slope < 0.0 && r2 > 0.95,
            format("log|o_e| fit over %.0f samples: slope %.4g 1/s (<0), R^2 %.4f (>0.95)", n,
                   slope, r2)};
}

Verdict criterion_10() {
    using namespace hoop::certificate;
    const hoop::NominalParams nominal = hoop::believed(PlantParams{}, 1.5);
    const auto d = derived_constants(nominal, 10.0);
    const double kappa = d.kappa_mid();
    auto g = hoop::testing::rng(1010);
    int accepted = 0;
    double worst_p = std::numeric_limits<double>::infinity();
    while (accepted < 100) {
        const double kd = uniform(g, 0.5, 10.0);
        const hoop::controller::Gains gains{uniform(g, 1.0, 3000.0), kd,
                                            uniform(g, 0.05, kd * kd * kd), 0.1};
        const auto r = check_gains(gains, d, kappa);
        if (r.passes()) {
            ++accepted;
            worst_p = std::min(worst_p, r.p_eigenvalues(0));
        }
    }

    const auto d0 = derived_constants(nominal, 0.0);
    const hoop::controller::Gains base{40.0, 1.0, 0.5, 0.1};
    bool ray_ok = true;
    double previous = -std::numeric_limits<double>::infinity();
    double first = 0.0;
    for (double s : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) {
        const hoop::controller::Gains gs{base.kp * s * s, base.kd * s, base.ki * s, base.kc};
        const auto r = check_gains(gs, d0, d0.kappa_mid());
        ray_ok = ray_ok && r.passes() && r.q_eigenvalues(0) > previous;
        if (s == 1.0) {
            first = r.q_eigenvalues(0);
        }
        previous = r.q_eigenvalues(0);
    }
    return {worst_p > 0.0 && ray_ok,
            format("min lambda(P_s) over 100 admissible gains %.4g (>0); lambda_min(Q_s) along "
                   "(s^2 kp, s kd, s ki): %.4g -> %.4g, monotone %s",
                   worst_p, first, previous, ray_ok ? "yes" : "no")};
}

Verdict criterion_11() {
    hoop::sim::SimConfig cfg;
    cfg.t_end = 2.0;
    cfg.stride = 1;
    const auto run = [&](double dt) {
        cfg.dt = dt;
        return hoop::sim::integrate(cfg).samples.back();
    };
    const auto distance = [](const hoop::sim::Sample &a, const hoop::sim::Sample &b) {
        const double v[] = {a.state.hoop_angle - b.state.hoop_angle,
                            a.state.position - b.state.position,
                            a.state.hoop_rate - b.state.hoop_rate,
                            a.state.actuator_angle - b.state.actuator_angle,
                            a.state.actuator_rate - b.state.actuator_rate,
                            a.integral - b.integral};
        double sum = 0.0;
        for (double x : v) {
            sum += x * x;
        }
        return std::sqrt(sum);
    };
    const auto oracle = run(1e-5);
    const double e1 = distance(run(0.02), oracle);
    const double e2 = distance(run(0.01), oracle);
    const double order = std::log2(e1 / e2);
    return {order >= 3.5 && order <= 4.5,
            format("observed order %.3f in [3.5, 4.5] (errors %.3g, %.3g vs dt=1e-5)", order, e1,
                   e2)};
}

Verdict criterion_12() {
    const hoop::geometry::HoopInertia field(hoop::Body{});
    auto g = hoop::testing::rng(1012);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        hoop::geometry::MetricitySample s;
        s.angle = uniform(g, -kPi, kPi);
        s.rate = uniform(g, -10, 10);
        s.x = uniform(g, -10, 10);
        s.x_dot = uniform(g, -10, 10);
        s.y = uniform(g, -10, 10);
        s.y_dot = uniform(g, -10, 10);
        worst = std::max(worst, hoop::geometry::metricity_residual(field, s));
    }
    double grid = 0.0;
    for (double a = 0.0; a < 2.0 * kPi; a += 1e-3) {
        const hoop::Body b;
        const double c2 = std::pow(b.coupling(), 2);
        const double closed = c2 * std::sin(2.0 * a) /
                              (2.0 * field.value(a) * b.actuator_pivot_inertia());
        grid = std::max(grid, std::abs(hoop::geometry::christoffel(field, a) - closed));
    }
    return {worst < 1e-10 && grid < 1e-12,
            format("max metricity residual %.3g (<1e-10); Christoffel grid error %.3g (<1e-12)",
                   worst, grid)};
}

const std::vector<std::pair<const char *, std::function<Verdict()>>> &criteria() {
    static const std::vector<std::pair<const char *, std::function<Verdict()>>> list{
        {"oracle equivalence", criterion_1},
        {"energy conservation", criterion_2},
        {"regularized error dynamics", criterion_3},
        {"maximum incline", criterion_4},
        {"fixed point tracking", criterion_5},
        {"ramp tracking", criterion_6},
        {"sinusoid tracking", criterion_7},
        {"constant disturbance rejection", criterion_8},
        {"exponential convergence fit", criterion_9},
        {"certificate matrices", criterion_10},
        {"RK4 convergence order", criterion_11},
        {"metricity", criterion_12},
    };
    return list;
}

} // namespace

int main(int argc, char **argv) {
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        const int k = std::atoi(argv[i]);
        if (k < 1 || k > static_cast<int>(criteria().size())) {
            std::fprintf(stderr, "usage: acceptance [criterion 1-%zu ...]\n", criteria().size());
            return 2;
        }
        selected.push_back(k);
    }
    if (selected.empty()) {
        for (int k = 1; k <= static_cast<int>(criteria().size()); ++k) {
            selected.push_back(k);
        }
    }
    int failures = 0;
    for (int k : selected) {
        const auto &[name, check] = criteria()[static_cast<std::size_t>(k - 1)];
        Verdict v;
        try {
            v = check();
        } catch (const std::exception &e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failures += v.pass ? 0 : 1;
        std::printf("criterion %2d %s  %s: %s\n", k, v.pass ? "PASS" : "FAIL", name,
                    v.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
