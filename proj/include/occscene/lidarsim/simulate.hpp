// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "occscene/lidarsim/features.hpp"
#include "occscene/lidarsim/head.hpp"
#include "occscene/lidarsim/rig.hpp"
#include "occscene/lidarsim/sampling.hpp"
#include "occscene/lidarsim/volume_render.hpp"

namespace occscene::lidarsim {

enum class DropMode { kThreshold, kBernoulli, kOff };
enum class SamplingMode { kPriorGuided, kUniform };

struct SimulateParams {
  std::uint32_t presamples = 512;  // M candidates per ray
  std::uint32_t resamples = 32;    // n rendered samples per ray
  std::uint64_t seed = 0;
  DropMode drop_mode = DropMode::kThreshold;
  SamplingMode sampling = SamplingMode::kPriorGuided;  // kUniform = no-PDF baseline
  int threads = 1;
};

struct LidarReturn {
  std::uint32_t row = 0, col = 0;
  double depth = 0.0;                              // h, meters
  Eigen::Vector3d point = Eigen::Vector3d::Zero();  // o + h * v
  float intensity = 0.0f;   // in [0, 1]
  float drop_prob = 0.0f;   // in [0, 1]
  bool dropped = false;
  bool miss = true;         // no occupied voxel along the ray
};

struct SampleStats {
  std::uint64_t occupancy_tests = 0;   // candidate point-in-voxel checks
  std::uint64_t feature_evals = 0;     // provider lookups
  std::uint64_t rays = 0;
  std::uint64_t hits = 0;
};

struct LidarPointCloud {
  std::vector<LidarReturn> returns;  // one per ray, row-major (row, col)
  SampleStats stats;
};

/// Per-ray pipeline: presample -> resample (empty support marks a miss) ->
/// provider features -> SDF head -> volume rendering -> intensity and drop
/// heads on the weighted ray feature. Rays are independent; per-ray RNG
/// streams derive from (seed, row, col) so any thread count produces the
/// same cloud. Rays whose rendering weights vanish entirely are reported as
/// misses so every non-miss return has depth > 0.
LidarPointCloud simulate(const voxgrid::SemanticOccupancyGrid& grid, const SensorRig& rig,
                         const FeatureProvider& provider, const LidarHead& head,
                         const SimulateParams& params = {});

}  // namespace occscene::lidarsim
