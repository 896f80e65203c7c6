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

// Runs the three tracking scenarios with the default robot and prints a
// short table of the tracking error every five seconds.

#include <cmath>
#include <cstdio>

#include "hoop/hoop.hpp"

int main() {
    for (const char *name : {"fixed_point", "ramp", "sinusoid"}) {
        hoop::config::RunSpec spec;
        spec.scenario = name;
        spec.t_end = 40.0;
        const auto traj = hoop::sim::integrate(hoop::config::to_sim_config(spec));

        std::printf("%s\n  %6s %10s %10s %10s\n", name, "t", "o_e", "omega_e", "omega_a");
        for (const auto &s : traj.samples) {
            if (std::fmod(s.t + 1e-9, 5.0) < 1e-6) {
                std::printf("  %6.1f %10.5f %10.5f %10.5f\n", s.t, s.position_error, s.rate_error,
                            s.state.actuator_rate);
            }
        }
        const auto summary = hoop::sim::summarize(traj);
        std::printf("  settling %.2f s, max |omega_a| %.3f rad/s\n\n", summary.settling_time,
                    summary.max_actuator_rate);
    }
}
