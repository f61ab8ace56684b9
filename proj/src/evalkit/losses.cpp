// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#include "occscene/evalkit/losses.hpp"

#include <cmath>

#include "occscene/core/errors.hpp"

namespace occscene::evalkit {

double masked_mse(const occdiff::LatentVolume& pred, const occdiff::LatentVolume& target,
                  const std::vector<double>& mask) {
  if (pred.frames != target.frames || pred.channels != target.channels ||
      pred.height != target.height || pred.width != target.width)
    throw ShapeMismatch("masked mse: volume shapes differ");
  if (mask.size() != pred.frames) throw ShapeMismatch("masked mse: mask length != frame count");

  double sum = 0.0;
  std::size_t counted = 0;
  const std::size_t fs = pred.frame_size();
  for (std::uint32_t t = 0; t < pred.frames; ++t) {
    const double m = mask[t];
    if (m != 0.0 && m != 1.0) throw InvalidArgument("masked mse: mask values must be 0 or 1");
    if (m == 1.0) continue;  // condition frames carry no loss
    const double* p = pred.frame(t);
    const double* g = target.frame(t);
    double frame = 0.0;
    for (std::size_t i = 0; i < fs; ++i) {
      const double d = p[i] - g[i];
      frame += d * d;
    }
    sum += frame;
    ++counted;
  }
  if (counted == 0) throw AllMasked("masked mse: every frame is masked");
  return sum / double(counted);
}

double noise_pred_loss(const occdiff::LatentVolume& eps_hat, const occdiff::LatentVolume& eps) {
  if (eps_hat.frames != eps.frames || eps_hat.channels != eps.channels ||
      eps_hat.height != eps.height || eps_hat.width != eps.width)
    throw ShapeMismatch("noise prediction loss: shapes differ");
  double sum = 0.0;
  const std::size_t fs = eps.frame_size();
  for (std::uint32_t t = 0; t < eps.frames; ++t) {
    const double* a = eps_hat.frame(t);
    const double* b = eps.frame(t);
    double frame = 0.0;
    for (std::size_t i = 0; i < fs; ++i) {
      const double d = a[i] - b[i];
      frame += d * d;
    }
    sum += frame;
  }
  return sum / double(eps.frames);
}

LidarLossComponents lidar_loss(const std::vector<double>& depth_pred,
                               const std::vector<double>& depth_gt,
                               const std::vector<double>& intensity_pred,
                               const std::vector<double>& intensity_gt,
                               const std::vector<double>& drop_logits,
                               const std::vector<std::uint8_t>& drop_gt, double lambda1,
                               double lambda2) {
  const std::size_t n = depth_pred.size();
  if (depth_gt.size() != n || intensity_pred.size() != n || intensity_gt.size() != n ||
      drop_logits.size() != n || drop_gt.size() != n)
    throw ShapeMismatch("lidar loss: ray counts differ");
  if (n == 0) throw ShapeMismatch("lidar loss: empty inputs");

  LidarLossComponents out;
  for (std::size_t i = 0; i < n; ++i) {
    out.depth_l1 += std::abs(depth_pred[i] - depth_gt[i]);
    out.intensity_l1 += std::abs(intensity_pred[i] - intensity_gt[i]);
    if (drop_gt[i] > 1) throw InvalidArgument("lidar loss: drop flags must be 0 or 1");
    // Numerically stable BCE on logits:
    //   max(x, 0) - x * y + log(1 + exp(-|x|))
    const double x = drop_logits[i];
    const double y = double(drop_gt[i]);
    out.drop_bce += std::max(x, 0.0) - x * y + std::log1p(std::exp(-std::abs(x)));
  }
  out.depth_l1 /= double(n);
  out.intensity_l1 /= double(n);
  out.drop_bce /= double(n);
  out.total = out.depth_l1 + lambda1 * out.intensity_l1 + lambda2 * out.drop_bce;
  return out;
}

}  // namespace occscene::evalkit
