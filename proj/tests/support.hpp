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

#ifndef HOOP_TESTS_SUPPORT_HPP
#define HOOP_TESTS_SUPPORT_HPP

#include <cstdint>
#include <numbers>
#include <random>

#include "hoop/params.hpp"

namespace hoop::testing {

inline constexpr double kPi = std::numbers::pi;

/// Seeded generator; every randomized test draws from its own stream.
inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64{seed}; }

inline double uniform(std::mt19937_64 &g, double lo, double hi) {
    return std::uniform_real_distribution<double>{lo, hi}(g);
}

inline HoopState random_state(std::mt19937_64 &g, double rate = 3.0) {
    return {uniform(g, -kPi, kPi), uniform(g, -3.0, 3.0), uniform(g, -rate, rate),
            uniform(g, -kPi, kPi), uniform(g, -rate, rate)};
}

/// Parameters from the reference experiment, level ground unless asked.
inline PlantParams flat_plant() {
    PlantParams p;
    p.incline = 0.0;
    return p;
}

} // namespace hoop::testing

#endif // HOOP_TESTS_SUPPORT_HPP
