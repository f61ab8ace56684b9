// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

namespace occscene::occdiff {

/// Linear-beta noise schedule; alpha_bar[t-1] = prod_{i<=t} (1 - beta_i).
struct NoiseSchedule {
  std::uint32_t steps = 0;
  std::vector<double> beta;       // strictly increasing in (0, 1)
  std::vector<double> alpha_bar;  // strictly decreasing in (0, 1)

  /// alpha_bar at schedule step t in [0, steps]; t = 0 is defined as 1.
  double alpha_bar_at(std::uint32_t t) const { return t == 0 ? 1.0 : alpha_bar[t - 1]; }
};

/// Throws BadRange unless 0 < beta_min < beta_max < 1 and steps >= 1.
NoiseSchedule make_schedule(std::uint32_t steps, double beta_min, double beta_max);

}  // namespace occscene::occdiff
