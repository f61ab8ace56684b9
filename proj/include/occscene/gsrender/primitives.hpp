// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <cstdint>
#include <optional>
#include <vector>

#include "occscene/gsrender/camera.hpp"
#include "occscene/voxgrid/grid.hpp"

namespace occscene::gsrender {

/// Anisotropic 3D Gaussian with a semantic label. Covariance is
/// R * diag(S)^2 * R^T.
struct GaussianPrimitive {
  Eigen::Vector3f position = Eigen::Vector3f::Zero();
  Eigen::Vector3f scale = Eigen::Vector3f::Ones();
  Eigen::Quaternionf rotation = Eigen::Quaternionf::Identity();
  float opacity = 0.99f;  // in (0, 1]
  std::uint8_t label = 0;

  Eigen::Matrix3f covariance() const {
    const Eigen::Matrix3f r = rotation.toRotationMatrix();
    return r * scale.cwiseProduct(scale).asDiagonal() * r.transpose();
  }
  void validate() const;
};

using GaussianPrimitiveSet = std::vector<GaussianPrimitive>;

struct VoxelGaussianParams {
  float opacity = 0.99f;
  float scale_factor = 0.5f;  // per-axis scale = scale_factor * voxel_size
};

/// One primitive per occupied voxel (label not 0 and not 255), centered on
/// the voxel, identity rotation, in grid index order.
GaussianPrimitiveSet voxels_to_gaussians(const voxgrid::SemanticOccupancyGrid& grid,
                                         const VoxelGaussianParams& params = {});

/// Screen-space footprint of a projected Gaussian.
struct ProjectedGaussian {
  Eigen::Vector2f mean2d;   // pixels
  Eigen::Matrix2f cov2d;    // pixels^2, includes the anti-alias floor
  float depth = 0.0f;       // camera-frame z, meters
};

constexpr float kDefaultNearPlane = 0.05f;   // meters
constexpr float kCovarianceFloor = 0.3f;     // px^2 diagonal added after projection

/// Projects the Gaussian into the camera. Returns nullopt (culled) when the
/// center depth is at or behind the near plane. cov2d is the upper-left 2x2
/// of J W Sigma W^T J^T plus the 0.3 px^2 floor, J the pinhole Jacobian at
/// the center.
std::optional<ProjectedGaussian> project_gaussian(const GaussianPrimitive& p, const Camera& cam,
                                                  float near_plane = kDefaultNearPlane);

/// Overwrites ground voxels under line-coded layout cells with the mapped
/// semantic class, so lane lines render into the semantic maps. "Ground" is
/// the lowest z-slice that contains any occupied voxel; only already
/// occupied cells of that slice are relabeled.
voxgrid::SemanticOccupancyGrid overlay_layout_lines(
    const voxgrid::SemanticOccupancyGrid& grid, const voxgrid::BevLayout& layout,
    const std::vector<std::pair<std::uint8_t, std::uint8_t>>& code_to_class);

}  // namespace occscene::gsrender
