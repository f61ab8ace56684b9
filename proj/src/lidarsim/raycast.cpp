// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#include "occscene/lidarsim/raycast.hpp"

#include <cmath>
#include <limits>

#include "occscene/core/errors.hpp"

namespace occscene::lidarsim {

std::optional<std::pair<double, double>> ray_grid_overlap(
    const voxgrid::SemanticOccupancyGrid& grid, const Ray& ray) {
  double t_near = 0.0;
  double t_far = std::numeric_limits<double>::infinity();
  for (int a = 0; a < 3; ++a) {
    const double lo = grid.origin[a];
    const double hi = grid.origin[a] + double(grid.dims[a]) * grid.voxel_size;
    const double o = ray.origin[a], d = ray.direction[a];
    if (d == 0.0) {
      if (o < lo || o > hi) return std::nullopt;
      continue;
    }
    double t0 = (lo - o) / d;
    double t1 = (hi - o) / d;
    if (t0 > t1) std::swap(t0, t1);
    t_near = std::max(t_near, t0);  // also clamps the start to >= 0
    t_far = std::min(t_far, t1);
  }
  if (t_near > t_far) return std::nullopt;
  return std::make_pair(t_near, t_far);
}

std::optional<RaycastHit> dda_raycast(const voxgrid::SemanticOccupancyGrid& grid, const Ray& ray,
                                      double max_range) {
  if (std::abs(ray.direction.norm() - 1.0) > 1e-9)
    throw InvalidArgument("ray direction must be unit length");
  const auto overlap = ray_grid_overlap(grid, ray);
  if (!overlap) return std::nullopt;
  const auto [t0, t_far] = *overlap;
  if (t0 > max_range) return std::nullopt;

  const double inv_vs = 1.0 / grid.voxel_size;
  // Entry voxel, clamped against boundary round-off.
  const Eigen::Vector3d entry = ray.origin + t0 * ray.direction;
  std::int64_t idx[3];
  for (int a = 0; a < 3; ++a) {
    const double c = (entry[a] - grid.origin[a]) * inv_vs;
    idx[a] = std::clamp<std::int64_t>(std::int64_t(std::floor(c)), 0,
                                      std::int64_t(grid.dims[a]) - 1);
  }

  std::int64_t step[3];
  double t_max[3], t_delta[3];
  for (int a = 0; a < 3; ++a) {
    const double d = ray.direction[a];
    if (d > 0.0) {
      step[a] = 1;
      const double next = grid.origin[a] + double(idx[a] + 1) * grid.voxel_size;
      t_max[a] = (next - ray.origin[a]) / d;
      t_delta[a] = grid.voxel_size / d;
    } else if (d < 0.0) {
      step[a] = -1;
      const double prev = grid.origin[a] + double(idx[a]) * grid.voxel_size;
      t_max[a] = (prev - ray.origin[a]) / d;
      t_delta[a] = -grid.voxel_size / d;
    } else {
      step[a] = 0;
      t_max[a] = t_delta[a] = std::numeric_limits<double>::infinity();
    }
  }

  const double t_stop = std::min(max_range, t_far);
  double t_entry = t0;
  while (true) {
    const std::uint8_t l = grid.at(std::uint32_t(idx[0]), std::uint32_t(idx[1]),
                                   std::uint32_t(idx[2]));
    if (l != 0 && l != voxgrid::kUnknownLabel) {
      if (t_entry > max_range) return std::nullopt;
      return RaycastHit{t_entry, l};
    }
    // Advance across the nearest voxel boundary.
    const int a = (t_max[0] <= t_max[1] && t_max[0] <= t_max[2]) ? 0
                  : (t_max[1] <= t_max[2])                       ? 1
                                                                 : 2;
    t_entry = t_max[a];
    if (t_entry > t_stop) return std::nullopt;
    idx[a] += step[a];
    if (idx[a] < 0 || idx[a] >= std::int64_t(grid.dims[a])) return std::nullopt;
    t_max[a] += t_delta[a];
  }
}

}  // namespace occscene::lidarsim
