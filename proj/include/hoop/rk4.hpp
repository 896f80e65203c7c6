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

#ifndef HOOP_RK4_HPP
#define HOOP_RK4_HPP

#include <array>
#include <cstddef>

namespace hoop {

/// Classical fourth-order Runge-Kutta step for a fixed-size state.
///
/// `rhs(t, x)` returns dx/dt. The combination order is fixed so identical
/// inputs give bit-identical outputs.
template <std::size_t N, typename Rhs>
std::array<double, N> rk4_step(Rhs &&rhs, double t, const std::array<double, N> &x, double dt) {
    using Vec = std::array<double, N>;
    const auto shifted = [&x](const Vec &k, double h) {
        Vec y;
        for (std::size_t i = 0; i < N; ++i) {
            y[i] = x[i] + h * k[i];
        }
        return y;
    };

    const double half = 0.5 * dt;
    const Vec k1 = rhs(t, x);
    const Vec k2 = rhs(t + half, shifted(k1, half));
    const Vec k3 = rhs(t + half, shifted(k2, half));
    const Vec k4 = rhs(t + dt, shifted(k3, dt));

    Vec next;
    for (std::size_t i = 0; i < N; ++i) {
        next[i] = x[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return next;
}

} // namespace hoop

#endif // HOOP_RK4_HPP
