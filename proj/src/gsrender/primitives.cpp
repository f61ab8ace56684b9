// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#include "occscene/gsrender/primitives.hpp"

#include <cmath>

#include "occscene/core/errors.hpp"

namespace occscene::gsrender {

void GaussianPrimitive::validate() const {
  if (!(scale.minCoeff() > 0.0f)) throw InvalidArgument("gaussian scale components must be > 0");
  if (std::abs(rotation.norm() - 1.0f) > 1e-6f)
    throw InvalidArgument("gaussian rotation quaternion must be normalized");
  if (!(opacity > 0.0f) || opacity > 1.0f)
    throw InvalidArgument("gaussian opacity must be in (0, 1]");
}

GaussianPrimitiveSet voxels_to_gaussians(const voxgrid::SemanticOccupancyGrid& grid,
                                         const VoxelGaussianParams& params) {
  if (!(params.opacity > 0.0f) || params.opacity > 1.0f)
    throw InvalidArgument("opacity must be in (0, 1]");
  if (!(params.scale_factor > 0.0f)) throw InvalidArgument("scale_factor must be > 0");
  GaussianPrimitiveSet prims;
  const float s = params.scale_factor * grid.voxel_size;
  for (std::uint32_t i = 0; i < grid.dims[0]; ++i)
    for (std::uint32_t j = 0; j < grid.dims[1]; ++j)
      for (std::uint32_t k = 0; k < grid.dims[2]; ++k) {
        const std::uint8_t l = grid.at(i, j, k);
        if (l == 0 || l == voxgrid::kUnknownLabel) continue;
        GaussianPrimitive p;
        p.position = voxel_center(grid, {i, j, k});
        p.scale = Eigen::Vector3f::Constant(s);
        p.rotation = Eigen::Quaternionf::Identity();
        p.opacity = params.opacity;
        p.label = l;
        prims.push_back(p);
      }
  return prims;
}

std::optional<ProjectedGaussian> project_gaussian(const GaussianPrimitive& p, const Camera& cam,
                                                  float near_plane) {
  const Eigen::Vector3f mu_cam = cam.to_camera(p.position);
  const float z = mu_cam.z();
  if (z <= near_plane) return std::nullopt;

  ProjectedGaussian out;
  out.depth = z;
  out.mean2d = cam.project(mu_cam);

  // Sigma' = J W Sigma W^T J^T with J the pinhole Jacobian at the center.
  const Eigen::Matrix3f cov_cam = cam.rotation * p.covariance() * cam.rotation.transpose();
  Eigen::Matrix<float, 2, 3> jac;
  const float inv_z = 1.0f / z;
  jac << cam.fx * inv_z, 0.0f, -cam.fx * mu_cam.x() * inv_z * inv_z,
      0.0f, cam.fy * inv_z, -cam.fy * mu_cam.y() * inv_z * inv_z;
  Eigen::Matrix2f cov2d = jac * cov_cam * jac.transpose();
  cov2d(0, 0) += kCovarianceFloor;
  cov2d(1, 1) += kCovarianceFloor;
  // Symmetrize away the last-ulp asymmetry of the sandwich product.
  cov2d(0, 1) = cov2d(1, 0) = 0.5f * (cov2d(0, 1) + cov2d(1, 0));
  out.cov2d = cov2d;
  return out;
}

voxgrid::SemanticOccupancyGrid overlay_layout_lines(
    const voxgrid::SemanticOccupancyGrid& grid, const voxgrid::BevLayout& layout,
    const std::vector<std::pair<std::uint8_t, std::uint8_t>>& code_to_class) {
  voxgrid::SemanticOccupancyGrid out = grid;
  if (code_to_class.empty()) return out;

  // Ground = lowest z-slice containing any occupied voxel.
  std::int64_t ground = -1;
  for (std::uint32_t k = 0; k < grid.dims[2] && ground < 0; ++k)
    for (std::uint32_t i = 0; i < grid.dims[0] && ground < 0; ++i)
      for (std::uint32_t j = 0; j < grid.dims[1]; ++j)
        if (grid.occupied(i, j, k)) {
          ground = k;
          break;
        }
  if (ground < 0) return out;

  std::array<std::int16_t, 256> remap;
  remap.fill(-1);
  for (auto [code, cls] : code_to_class) {
    if (cls >= grid.num_classes)
      throw LabelOutOfRange("line class " + std::to_string(int(cls)) + " >= grid num_classes");
    remap[code] = cls;
  }

  const std::uint32_t k0 = std::uint32_t(ground);
  for (std::uint32_t i = 0; i < grid.dims[0]; ++i)
    for (std::uint32_t j = 0; j < grid.dims[1]; ++j) {
      if (!grid.occupied(i, j, k0)) continue;
      const Eigen::Vector3f c = voxel_center(grid, {i, j, k0});
      const float u = (c.x() - layout.origin.x()) / layout.cell_size;
      const float v = (c.y() - layout.origin.y()) / layout.cell_size;
      if (u < 0.0f || v < 0.0f) continue;
      const auto li = std::uint32_t(u), lj = std::uint32_t(v);
      if (li >= layout.dims[0] || lj >= layout.dims[1]) continue;
      const std::int16_t cls = remap[layout.at(li, lj)];
      if (cls >= 0) out.labels[out.index(i, j, k0)] = std::uint8_t(cls);
    }
  return out;
}

}  // namespace occscene::gsrender
