// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#include "occscene/occdiff/schedule.hpp"

#include "occscene/core/errors.hpp"

namespace occscene::occdiff {

NoiseSchedule make_schedule(std::uint32_t steps, double beta_min, double beta_max) {
  if (steps < 1) throw BadRange("schedule needs at least 1 step");
  if (!(0.0 < beta_min) || !(beta_min < beta_max) || !(beta_max < 1.0))
    throw BadRange("schedule requires 0 < beta_min < beta_max < 1");
  NoiseSchedule s;
  s.steps = steps;
  s.beta.resize(steps);
  s.alpha_bar.resize(steps);
  double prod = 1.0;
  for (std::uint32_t t = 0; t < steps; ++t) {
    const double frac = steps == 1 ? 0.0 : double(t) / double(steps - 1);
    s.beta[t] = beta_min + frac * (beta_max - beta_min);
    prod *= 1.0 - s.beta[t];
    s.alpha_bar[t] = prod;
  }
  return s;
}

}  // namespace occscene::occdiff
