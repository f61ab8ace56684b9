// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#include "occscene/voxgrid/embedding.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "occscene/core/errors.hpp"

namespace occscene::voxgrid {

void ClassEmbeddingTable::validate() const {
  if (embed_dim < 1) throw InvalidArgument("embed_dim must be >= 1");
  if (weights.size() != std::size_t(num_classes) * embed_dim)
    throw DimMismatch("embedding table: expected " +
                      std::to_string(std::size_t(num_classes) * embed_dim) + " weights, got " +
                      std::to_string(weights.size()));
  for (float w : weights)
    if (!std::isfinite(w)) throw InvalidArgument("embedding table weights must be finite");
}

ClassEmbeddingTable ClassEmbeddingTable::unit_rows(std::uint32_t num_classes,
                                                   std::uint32_t embed_dim) {
  const std::uint64_t capacity =
      std::uint64_t(embed_dim) + std::uint64_t(embed_dim) * (embed_dim - 1) / 2;
  if (num_classes > capacity)
    throw InvalidArgument("unit_rows: " + std::to_string(num_classes) +
                          " classes exceed capacity " + std::to_string(capacity) +
                          " of embed_dim " + std::to_string(embed_dim));
  ClassEmbeddingTable t;
  t.num_classes = num_classes;
  t.embed_dim = embed_dim;
  t.weights.assign(std::size_t(num_classes) * embed_dim, 0.0f);
  const float inv_sqrt2 = 1.0f / std::sqrt(2.0f);
  // Lexicographic (a, b) pairs for the two-hot rows past the basis block.
  std::uint32_t pa = 0, pb = 1;
  for (std::uint32_t c = 0; c < num_classes; ++c) {
    float* row = t.weights.data() + std::size_t(c) * embed_dim;
    if (c < embed_dim) {
      row[c] = 1.0f;
      continue;
    }
    row[pa] = inv_sqrt2;
    row[pb] = inv_sqrt2;
    if (++pb == embed_dim) {
      ++pa;
      pb = pa + 1;
    }
  }
  return t;
}

BevFeatureMap embed_labels(const SemanticOccupancyGrid& grid, const ClassEmbeddingTable& table) {
  if (table.num_classes < grid.num_classes)
    throw DimMismatch("embedding table has " + std::to_string(table.num_classes) +
                      " classes, grid needs " + std::to_string(grid.num_classes));
  BevFeatureMap fmap;
  fmap.dims = {grid.dims[0], grid.dims[1]};
  fmap.depth = grid.dims[2];
  fmap.embed_dim = table.embed_dim;
  fmap.values.assign(grid.voxel_count() * table.embed_dim, 0.0f);
  const std::uint32_t cp = table.embed_dim;
  for (std::size_t v = 0; v < grid.labels.size(); ++v) {
    const std::uint8_t l = grid.labels[v];
    if (l == kUnknownLabel) continue;  // zero vector
    const float* row = table.weights.data() + std::size_t(l) * cp;
    float* dst = fmap.values.data() + v * cp;
    for (std::uint32_t e = 0; e < cp; ++e) dst[e] = row[e];
  }
  return fmap;
}

SemanticOccupancyGrid unembed_labels(const BevFeatureMap& fmap, const ClassEmbeddingTable& table,
                                     std::uint32_t depth, float voxel_size,
                                     const Eigen::Vector3f& origin) {
  if (fmap.depth != depth || fmap.embed_dim != table.embed_dim)
    throw DimMismatch("feature map channels (" + std::to_string(fmap.depth) + "*" +
                      std::to_string(fmap.embed_dim) + ") do not match D=" +
                      std::to_string(depth) + ", C'=" + std::to_string(table.embed_dim));
  SemanticOccupancyGrid grid;
  grid.dims = {fmap.dims[0], fmap.dims[1], depth};
  grid.voxel_size = voxel_size;
  grid.origin = origin;
  grid.num_classes = table.num_classes;
  grid.labels.resize(grid.voxel_count());
  const std::uint32_t cp = table.embed_dim;
  for (std::size_t v = 0; v < grid.labels.size(); ++v) {
    const float* feat = fmap.values.data() + v * cp;
    std::uint32_t best = 0;
    double best_logit = -std::numeric_limits<double>::infinity();
    for (std::uint32_t c = 0; c < table.num_classes; ++c) {
      const float* row = table.weights.data() + std::size_t(c) * cp;
      double logit = 0.0;
      for (std::uint32_t e = 0; e < cp; ++e) logit += double(feat[e]) * row[e];
      if (logit > best_logit) {  // ties break toward the lowest class index
        best_logit = logit;
        best = c;
      }
    }
    grid.labels[v] = std::uint8_t(best);
  }
  return grid;
}

}  // namespace occscene::voxgrid
