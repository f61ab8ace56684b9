// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <memory>
#include <vector>

#include "occscene/voxgrid/grid.hpp"

namespace occscene::lidarsim {

/// Per-point feature source sampled along rays. Stands in for the trained
/// sparse feature network; lookups outside the grid return a declared
/// far-field value.
class FeatureProvider {
 public:
  virtual ~FeatureProvider() = default;
  virtual std::uint32_t feature_dim() const = 0;
  virtual Eigen::VectorXd sample(const Eigen::Vector3d& point) const = 0;
};

/// Scalar signed distance to the nearest occupied-voxel surface, negative
/// inside occupied voxels. Near the surface the distance is exact
/// (face/box distances against the occupancy mask); away from it a
/// Euclidean distance transform supplies the far field.
class AnalyticSdfProvider final : public FeatureProvider {
 public:
  explicit AnalyticSdfProvider(const voxgrid::SemanticOccupancyGrid& grid);

  std::uint32_t feature_dim() const override { return 1; }
  Eigen::VectorXd sample(const Eigen::Vector3d& point) const override;
  double sdf(const Eigen::Vector3d& point) const;

 private:
  bool voxel_occupied(std::int64_t i, std::int64_t j, std::int64_t k) const;

  std::array<std::uint32_t, 3> dims_;
  float voxel_size_;
  Eigen::Vector3f origin_;
  std::vector<std::uint8_t> occupied_;
  std::vector<float> dist_occ_;   // voxel units, to the nearest occupied center
  std::vector<float> dist_free_;  // voxel units, to the nearest free center
  double far_value_;
};

/// Dense feature volume with trilinear interpolation, for loading
/// externally computed features.
class LoadedFeatureProvider final : public FeatureProvider {
 public:
  LoadedFeatureProvider(std::array<std::uint32_t, 3> dims, float voxel_size,
                        const Eigen::Vector3f& origin, std::uint32_t feature_dim,
                        std::vector<float> data, Eigen::VectorXd far_value);

  std::uint32_t feature_dim() const override { return dim_; }
  Eigen::VectorXd sample(const Eigen::Vector3d& point) const override;

 private:
  std::array<std::uint32_t, 3> dims_;
  float voxel_size_;
  Eigen::Vector3f origin_;
  std::uint32_t dim_;
  std::vector<float> data_;  // [(i * W + j) * D + k] * dim + c
  Eigen::VectorXd far_value_;
};

}  // namespace occscene::lidarsim
