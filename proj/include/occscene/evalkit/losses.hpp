// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "occscene/occdiff/latent.hpp"

namespace occscene::evalkit {

/// Masked frame reconstruction error: sum over frames of
/// (1 - m_i) * ||pred_i - target_i||^2, divided by the number of unmasked
/// frames. Mask values must be 0 or 1; all-masked throws AllMasked.
double masked_mse(const occdiff::LatentVolume& pred, const occdiff::LatentVolume& target,
                  const std::vector<double>& mask);

/// Mean over frames of the squared norm ||eps_hat_i - eps_i||^2.
double noise_pred_loss(const occdiff::LatentVolume& eps_hat, const occdiff::LatentVolume& eps);

struct LidarLossComponents {
  double depth_l1 = 0.0;
  double intensity_l1 = 0.0;
  double drop_bce = 0.0;
  double total = 0.0;
};

/// L1(depth) + lambda1 * L1(intensity) + lambda2 * BCE(drop logits), each
/// term a mean over rays. Ground-truth drop flags must be 0/1.
LidarLossComponents lidar_loss(const std::vector<double>& depth_pred,
                               const std::vector<double>& depth_gt,
                               const std::vector<double>& intensity_pred,
                               const std::vector<double>& intensity_gt,
                               const std::vector<double>& drop_logits,
                               const std::vector<std::uint8_t>& drop_gt, double lambda1 = 1.0,
                               double lambda2 = 1.0);

}  // namespace occscene::evalkit
