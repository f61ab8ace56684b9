// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "occscene/geomwarp/warp.hpp"

namespace occscene::geomwarp {

enum class NoiseMode { kVanilla, kGeometric };

struct NoiseSpec {
  float lambda = 0.3f;  // balancing coefficient for the appearance prior
  std::uint64_t seed = 0;
  NoiseMode mode = NoiseMode::kVanilla;
};

/// Sampling noise with an appearance prior mixed in:
///   vanilla    eps = lambda * z_c + n
///   geometric  eps = lambda * warp(z_c, depth, ref->tgt) + n
/// with n ~ N(0, I) drawn from a counter-based per-pixel stream, so the
/// output is deterministic for a given seed. Invalid warp pixels carry pure
/// noise. `zero_noise` suppresses n (test hook).
LatentImage build_noise_prior(const LatentImage& z_c, const gsrender::DepthMap& depth,
                              const gsrender::Camera& cam_ref, const gsrender::Camera& cam_tgt,
                              const NoiseSpec& spec, bool zero_noise = false);

}  // namespace occscene::geomwarp
