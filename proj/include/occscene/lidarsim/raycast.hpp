// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>

#include "occscene/lidarsim/rig.hpp"
#include "occscene/voxgrid/grid.hpp"

namespace occscene::lidarsim {

struct RaycastHit {
  double depth = 0.0;       // distance to the entry face of the hit voxel
  std::uint8_t label = 0;
};

/// Hard ray casting by Amanatides-Woo voxel traversal: distance to the entry
/// face of the first occupied voxel (label not 0/255), clamped to 0 when the
/// ray starts inside one. nullopt when nothing is hit within max_range or
/// the ray never enters the grid.
std::optional<RaycastHit> dda_raycast(const voxgrid::SemanticOccupancyGrid& grid, const Ray& ray,
                                      double max_range);

/// Parametric overlap [t_near, t_far] of a ray with the grid's AABB, with
/// t_near clamped to >= 0. Empty optional when the ray misses the box.
std::optional<std::pair<double, double>> ray_grid_overlap(
    const voxgrid::SemanticOccupancyGrid& grid, const Ray& ray);

}  // namespace occscene::lidarsim
