// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "occscene/voxgrid/grid.hpp"

namespace occscene::evalkit {

/// Mergeable per-class confusion counts.
struct ConfusionTally {
  std::uint32_t num_classes = 0;
  std::vector<std::uint64_t> tp, fp, fn;

  explicit ConfusionTally(std::uint32_t classes = 0)
      : num_classes(classes), tp(classes, 0), fp(classes, 0), fn(classes, 0) {}
  ConfusionTally& merge(const ConfusionTally& other);
};

struct IouReport {
  std::vector<double> per_class;     // NaN for classes absent from both grids
  double miou = 0.0;                 // mean over semantic classes (>= 1) present in either
  double binary_iou = 0.0;           // occupied-vs-free
  ConfusionTally tally{0};
};

/// Voxelwise IoU. Ground-truth cells labeled 255 are excluded entirely.
/// Classes absent from both prediction and ground truth are excluded from
/// the mIoU mean. Throws DimMismatch.
IouReport iou_miou(const voxgrid::SemanticOccupancyGrid& pred,
                   const voxgrid::SemanticOccupancyGrid& gt);

/// Mean over unmasked voxels of -log softmax at the true class, stabilized
/// by max subtraction. Rows of `logits` hold num_classes entries per voxel;
/// label 255 masks a voxel out. Throws AllMasked.
double cross_entropy(const std::vector<std::vector<double>>& logits,
                     const std::vector<std::uint8_t>& labels);

/// Lovasz-softmax surrogate of the Jaccard loss, averaged over the classes
/// present in the labels. Probability rows must sum to 1 within 1e-6
/// (NotNormalized otherwise); sorting ties break by original index.
double lovasz_softmax(const std::vector<std::vector<double>>& probs,
                      const std::vector<std::uint8_t>& labels);

/// KL(N(mu, e^logvar) || N(0, I)) summed over dims, mean over batch rows.
double kl_diag_gauss(const std::vector<std::vector<double>>& mu,
                     const std::vector<std::vector<double>>& logvar);

}  // namespace occscene::evalkit
