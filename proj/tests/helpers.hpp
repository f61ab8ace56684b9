// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <random>

#include "occscene/voxgrid/grid.hpp"

namespace occscene::testutil {

/// Seeded random grid. occupancy in [0, 1] controls the fraction of
/// non-free voxels; unknown_rate injects 255 sentinels.
inline voxgrid::SemanticOccupancyGrid random_grid(std::mt19937& rng,
                                                  std::array<std::uint32_t, 3> dims,
                                                  std::uint32_t num_classes,
                                                  double occupancy = 0.3,
                                                  double unknown_rate = 0.0) {
  voxgrid::SemanticOccupancyGrid g;
  g.dims = dims;
  g.num_classes = num_classes;
  std::uniform_real_distribution<float> size_dist(0.2f, 2.0f);
  g.voxel_size = size_dist(rng);
  std::uniform_real_distribution<float> origin_dist(-20.0f, 20.0f);
  g.origin = {origin_dist(rng), origin_dist(rng), origin_dist(rng)};
  g.labels.resize(g.voxel_count());
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<std::uint32_t> cls(1, num_classes - 1);
  for (auto& l : g.labels) {
    const double r = u(rng);
    if (r < unknown_rate)
      l = voxgrid::kUnknownLabel;
    else if (r < unknown_rate + occupancy)
      l = std::uint8_t(cls(rng));
    else
      l = 0;
  }
  return g;
}

/// Structured occupancy: a one-voxel ground slab plus random solid boxes
/// until the target fraction of voxels is occupied. Chords through such
/// scenes are voxel-thick, like real driving occupancy.
inline voxgrid::SemanticOccupancyGrid random_scene_grid(std::mt19937& rng,
                                                        std::array<std::uint32_t, 3> dims,
                                                        std::uint32_t num_classes,
                                                        double occupancy = 0.1) {
  voxgrid::SemanticOccupancyGrid g;
  g.dims = dims;
  g.num_classes = num_classes;
  g.voxel_size = 1.0f;
  g.origin = {-float(dims[0]) / 2.0f, -float(dims[1]) / 2.0f, -float(dims[2]) / 2.0f};
  g.labels.assign(g.voxel_count(), 0);
  // Ground slab a few voxels below the grid center (the sensor mounts near
  // the center, a couple of meters above ground, like a roof-mounted unit).
  const std::uint32_t cx = dims[0] / 2, cy = dims[1] / 2, cz = dims[2] / 2;
  const std::uint32_t ground_k = cz >= 3 ? cz - 3 : 0;
  std::uniform_int_distribution<std::uint32_t> cls(1, num_classes - 1);
  for (std::uint32_t i = 0; i < dims[0]; ++i)
    for (std::uint32_t j = 0; j < dims[1]; ++j) g.labels[g.index(i, j, ground_k)] = 1;

  std::size_t occupied = std::size_t(dims[0]) * dims[1];
  const auto target = std::size_t(double(g.voxel_count()) * occupancy);
  std::uniform_int_distribution<std::uint32_t> side(2, 8);
  // Clearance around the grid center: the sensor must sit in free space.
  const auto in_clearance = [&](std::uint32_t i, std::uint32_t j, std::uint32_t k) {
    return i + 4 > cx && i < cx + 4 && j + 4 > cy && j < cy + 4 && k + 4 > cz && k < cz + 4;
  };
  while (occupied < target) {
    const std::uint32_t sx = side(rng), sy = side(rng), sz = side(rng);
    std::uniform_int_distribution<std::uint32_t> px(0, dims[0] - 1), py(0, dims[1] - 1),
        pz(ground_k + 1, dims[2] - 1);
    const std::uint32_t x0 = px(rng), y0 = py(rng), z0 = pz(rng);
    const std::uint8_t label = std::uint8_t(cls(rng));
    for (std::uint32_t i = x0; i < std::min(x0 + sx, dims[0]); ++i)
      for (std::uint32_t j = y0; j < std::min(y0 + sy, dims[1]); ++j)
        for (std::uint32_t k = z0; k < std::min(z0 + sz, dims[2]); ++k) {
          if (in_clearance(i, j, k)) continue;
          auto& l = g.labels[g.index(i, j, k)];
          if (l == 0) {
            l = label;
            ++occupied;
          }
        }
  }
  return g;
}

}  // namespace occscene::testutil
