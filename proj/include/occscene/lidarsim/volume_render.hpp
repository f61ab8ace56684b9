// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include <Eigen/Core>

namespace occscene::lidarsim {

struct VolumeRenderResult {
  std::vector<double> weights;  // w_i >= 0, sum <= 1
  double depth = 0.0;           // h = sum w_i * s_i
};

/// SDF-to-weight volume rendering:
///   beta_i = max((Phi(f_i) - Phi(f_{i+1})) / Phi(f_i), 0),  beta_n = 0
///   w_i    = prod_{j<i} (1 - beta_j) * beta_i
///   h      = sum w_i * s_i
/// with Phi the sigmoid of slope `sharpness`. Phi values below 1e-12 force
/// beta_i = 0 so the ratio stays defined.
VolumeRenderResult volume_render_depth(const std::vector<double>& sdf,
                                       const std::vector<double>& s, double sharpness);

/// v_r = sum_i w_i * u_i. Throws LengthMismatch.
Eigen::VectorXd ray_feature(const std::vector<double>& weights,
                            const std::vector<Eigen::VectorXd>& features);

}  // namespace occscene::lidarsim
