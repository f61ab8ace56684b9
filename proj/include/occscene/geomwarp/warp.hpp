// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "occscene/gsrender/camera.hpp"
#include "occscene/gsrender/rasterize.hpp"

namespace occscene::geomwarp {

/// Multi-channel latent living at 1/downsample of the rendered resolution.
struct LatentImage {
  std::uint32_t height = 0, width = 0;
  std::uint32_t channels = 1;
  std::uint32_t downsample = 1;  // depth-map resolution / latent resolution
  std::vector<float> values;     // [(y * width + x) * channels + c]

  std::size_t index(std::uint32_t x, std::uint32_t y, std::uint32_t c = 0) const {
    return (std::size_t(y) * width + x) * channels + c;
  }
  float at(std::uint32_t x, std::uint32_t y, std::uint32_t c = 0) const {
    return values[index(x, y, c)];
  }
  void validate() const;
};

struct WarpResult {
  LatentImage latent;
  std::vector<std::uint8_t> valid;  // per pixel; 0 where the warp had no source
};

/// Inverse warp of the reference latent into the target view: each target
/// latent pixel is lifted with the target view's rendered depth (averaged
/// over valid full-res pixels of its block), moved through the relative
/// pose, projected into the reference camera and bilinearly sampled from
/// z_c. Out-of-frustum, behind-camera and zero-depth pixels produce zeros
/// and a cleared validity bit. Throws ResolutionMismatch when the depth map
/// is not downsample * latent resolution.
WarpResult warp_latent(const LatentImage& z_c, const gsrender::DepthMap& depth,
                       const gsrender::Camera& cam_ref, const gsrender::Camera& cam_tgt);

}  // namespace occscene::geomwarp
