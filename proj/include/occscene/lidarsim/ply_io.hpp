// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "occscene/lidarsim/simulate.hpp"

namespace occscene::lidarsim {

/// Binary little-endian PLY with float32 x, y, z, intensity, drop_prob and
/// uchar dropped. Misses are never written; dropped returns are excluded
/// unless include_dropped is set (they then carry dropped = 1).
void save_ply(const std::string& path, const LidarPointCloud& cloud,
              bool include_dropped = false);

struct PlyPoint {
  float x = 0, y = 0, z = 0;
  float intensity = 0;
  float drop_prob = 0;
  std::uint8_t dropped = 0;
  std::uint8_t label = 0;  // voxel-center exports only
};

std::vector<PlyPoint> load_ply(const std::string& path);

/// Voxel-center export: float32 x, y, z plus uchar label per point.
void save_voxel_ply(const std::string& path, const std::vector<PlyPoint>& points);

}  // namespace occscene::lidarsim
