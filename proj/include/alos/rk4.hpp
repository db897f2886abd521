/*
 * Copyright 2026 The ALOS Guidance Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/// \file
/// \brief Fixed-step classical Runge-Kutta for small fixed-size states.

#ifndef ALOS_RK4_HPP_
#define ALOS_RK4_HPP_

#include <array>
#include <cstddef>

namespace alos {

template <std::size_t N>
using StateArray = std::array<double, N>;

template <std::size_t N>
StateArray<N> axpy(const StateArray<N>& x, double a, const StateArray<N>& k) {
  StateArray<N> out;
  for (std::size_t i = 0; i < N; ++i) {
    out[i] = x[i] + a * k[i];
  }
  return out;
}

/// One RK4 step of x' = f(t, x).
template <std::size_t N, typename Rhs>
StateArray<N> rk4_step(Rhs&& f, double t, const StateArray<N>& x, double dt) {
  const StateArray<N> k1 = f(t, x);
  const StateArray<N> k2 = f(t + 0.5 * dt, axpy(x, 0.5 * dt, k1));
  const StateArray<N> k3 = f(t + 0.5 * dt, axpy(x, 0.5 * dt, k2));
  const StateArray<N> k4 = f(t + dt, axpy(x, dt, k3));
  StateArray<N> out;
  for (std::size_t i = 0; i < N; ++i) {
    out[i] = x[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

}  // namespace alos

#endif  // ALOS_RK4_HPP_
