// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <vector>

#include "occscene/voxgrid/grid.hpp"

namespace occscene::voxgrid {

/// Per-class embedding rows used to fold voxel labels into BEV channels and
/// back. Unknown labels (255) map to the zero vector.
struct ClassEmbeddingTable {
  std::uint32_t num_classes = 0;
  std::uint32_t embed_dim = 8;
  std::vector<float> weights;  // row-major, num_classes x embed_dim

  std::span<const float> row(std::uint32_t c) const {
    return {weights.data() + std::size_t(c) * embed_dim, embed_dim};
  }
  void validate() const;

  /// Canonical basis rows while num_classes <= embed_dim (exactly
  /// orthonormal). Beyond that no orthogonal set exists, so extra classes get
  /// normalized two-hot rows whose pairwise dot with every other row is at
  /// most 1/sqrt(2) < 1 — argmax against any single row still recovers it
  /// exactly.
  static ClassEmbeddingTable unit_rows(std::uint32_t num_classes, std::uint32_t embed_dim);

  bool operator==(const ClassEmbeddingTable&) const = default;
};

/// Column features of a grid folded through an embedding table: channel
/// block [k*C' .. (k+1)*C') of cell (i, j) holds the embedding of the label
/// at voxel (i, j, k).
struct BevFeatureMap {
  std::array<std::uint32_t, 2> dims{1, 1};  // (H, W)
  std::uint32_t depth = 1;                  // D of the source grid
  std::uint32_t embed_dim = 8;              // C'
  std::vector<float> values;                // [(i*W + j)*D + k]*C' + e

  std::uint32_t channels() const { return depth * embed_dim; }
  std::size_t offset(std::uint32_t i, std::uint32_t j, std::uint32_t k) const {
    return ((std::size_t(i) * dims[1] + j) * depth + k) * embed_dim;
  }
};

/// Fold labels into per-column embedding channels. Requires
/// table.num_classes >= grid.num_classes; throws DimMismatch otherwise.
BevFeatureMap embed_labels(const SemanticOccupancyGrid& grid, const ClassEmbeddingTable& table);

/// Recover labels by per-voxel dot products against the table rows; argmax
/// with ties broken toward the lowest class index. The geometry arguments
/// rebuild the grid header (they are not recoverable from the features).
SemanticOccupancyGrid unembed_labels(const BevFeatureMap& fmap, const ClassEmbeddingTable& table,
                                     std::uint32_t depth, float voxel_size = 1.0f,
                                     const Eigen::Vector3f& origin = Eigen::Vector3f::Zero());

}  // namespace occscene::voxgrid
