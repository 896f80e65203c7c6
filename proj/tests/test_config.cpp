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

#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "hoop/config.hpp"

namespace {

using hoop::config::RunSpec;

TEST(Config, DefaultsMatchReferenceExperiment) {
    const RunSpec s;
    EXPECT_EQ(s.plant.body.hoop_mass, 1.00);
    EXPECT_EQ(s.plant.body.hoop_inertia, 0.021);
    EXPECT_EQ(s.plant.body.radius, 0.18);
    EXPECT_EQ(s.plant.body.actuator_mass, 3.28);
    EXPECT_EQ(s.plant.body.actuator_inertia, 0.035);
    EXPECT_EQ(s.plant.body.arm_length, 0.14);
    EXPECT_NEAR(hoop::rad_to_deg(s.plant.incline), 20.0, 1e-12);
    EXPECT_EQ(s.initial.position, -2.0);
    EXPECT_EQ(s.initial.hoop_rate, -0.1);
    EXPECT_EQ(s.initial.actuator_rate, 0.1);
    EXPECT_EQ(s.initial.hoop_angle, 0.0);
    EXPECT_EQ(s.initial.actuator_angle, 0.0);
    EXPECT_EQ(s.gains.kp, 16.0);
    EXPECT_EQ(s.gains.kd, 7.0);
    EXPECT_EQ(s.gains.ki, 4.0);
    EXPECT_EQ(s.gains.kc, 0.1);
    EXPECT_EQ(s.mismatch, 1.5);
}

TEST(Config, ParsesSectionsAndAngles) {
    const RunSpec s = hoop::config::parse(R"(
# comment
[plant]
incline = 10deg
gravity = 9.8   ; trailing comment

[controller]
kp = 20
feedforward = yes

[scenario]
name = ramp
velocity = 0.1

[initial]
actuator_angle = 0.5
)");
    EXPECT_NEAR(s.plant.incline, hoop::deg_to_rad(10.0), 1e-15);
    EXPECT_EQ(s.plant.gravity, 9.8);
    EXPECT_EQ(s.gains.kp, 20.0);
    EXPECT_TRUE(s.control.reference_feedforward);
    EXPECT_EQ(s.scenario, "ramp");
    EXPECT_EQ(s.ref_velocity, 0.1);
    EXPECT_EQ(s.initial.actuator_angle, 0.5);
}

TEST(Config, ErrorsCarryLineNumbers) {
    const auto line_of = [](const char *text) {
        try {
            hoop::config::parse(text);
        } catch (const hoop::ConfigError &e) {
            return e.line();
        }
        return -1;
    };
    EXPECT_EQ(line_of("[plant]\nradius = 0.2\nbogus = 1\n"), 3);
    EXPECT_EQ(line_of("[plant]\nradius = abc\n"), 2);
    EXPECT_EQ(line_of("\n\n[plant\n"), 3);
    EXPECT_EQ(line_of("radius = 1\n"), 1);
    EXPECT_EQ(line_of("[scenario]\nname = circle\n"), 2);
    EXPECT_EQ(line_of("[sim]\nstride = 2.5\n"), 2);
}

TEST(Config, Overrides) {
    RunSpec s;
    hoop::config::apply_override(s, "plant.incline=5deg");
    hoop::config::apply_override(s, "sim.dt = 0.002");
    EXPECT_NEAR(s.plant.incline, hoop::deg_to_rad(5.0), 1e-15);
    EXPECT_EQ(s.dt, 0.002);
    EXPECT_THROW(hoop::config::apply_override(s, "sim.dt"), hoop::ConfigError);
    EXPECT_THROW(hoop::config::apply_override(s, "sim.nope=1"), hoop::ConfigError);
}

TEST(Config, InvalidValuesRejectedAtBuild) {
    RunSpec s;
    s.dt = 0.0;
    EXPECT_THROW(hoop::config::to_sim_config(s), hoop::ParameterError);
    s = RunSpec{};
    s.mismatch = -1.0;
    EXPECT_THROW(hoop::config::to_sim_config(s), hoop::ParameterError);
}

TEST(Config, WriteParseRoundTrip) {
    RunSpec s;
    s.plant.incline = 0.1 + 1e-17;
    s.gains.kp = 1.0 / 3.0;
    s.scenario = "sinusoid";
    s.ref_frequency = 0.7;
    s.kappa = 1.23456789012345678;
    std::ostringstream os;
    hoop::config::write(os, s);
    const RunSpec back = hoop::config::parse(os.str());
    std::ostringstream again;
    hoop::config::write(again, back);
    EXPECT_EQ(os.str(), again.str());
    EXPECT_EQ(back.gains.kp, s.gains.kp);
    EXPECT_EQ(back.kappa, s.kappa);
}

TEST(Config, ManifestReproducesRunBitIdentically) {
    RunSpec s;
    s.scenario = "sinusoid";
    s.t_end = 3.0;
    s.mismatch = 1.37;
    s.plant.incline = hoop::deg_to_rad(13.3);
    const auto first = hoop::sim::integrate(hoop::config::to_sim_config(s));
    std::ostringstream manifest;
    hoop::config::write_manifest(manifest, s, hoop::sim::summarize(first), "ok");

    const RunSpec back = hoop::config::parse(manifest.str());
    const auto second = hoop::sim::integrate(hoop::config::to_sim_config(back));
    ASSERT_EQ(first.samples.size(), second.samples.size());
    for (std::size_t i = 0; i < first.samples.size(); ++i) {
        ASSERT_EQ(first.samples[i].state, second.samples[i].state) << i;
        ASSERT_EQ(first.samples[i].integral, second.samples[i].integral);
    }
}

} // namespace
