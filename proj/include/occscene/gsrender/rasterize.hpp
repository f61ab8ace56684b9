// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "occscene/gsrender/primitives.hpp"

namespace occscene::gsrender {

constexpr std::uint8_t kNoClass = 255;

/// Per-pixel rendered depth plus the accumulated opacity that produced it.
struct DepthMap {
  std::uint32_t width = 0, height = 0;
  std::vector<float> values;  // meters, row-major
  std::vector<float> alpha;   // accumulated opacity in [0, 1]

  std::size_t index(std::uint32_t x, std::uint32_t y) const {
    return std::size_t(y) * width + x;
  }
  float at(std::uint32_t x, std::uint32_t y) const { return values[index(x, y)]; }
};

struct SemanticMap {
  std::uint32_t width = 0, height = 0;
  std::vector<std::uint8_t> labels;  // row-major; 255 = no class

  std::size_t index(std::uint32_t x, std::uint32_t y) const {
    return std::size_t(y) * width + x;
  }
  std::uint8_t at(std::uint32_t x, std::uint32_t y) const { return labels[index(x, y)]; }
};

struct RenderResult {
  DepthMap depth;
  SemanticMap semantics;
};

struct RasterizeOptions {
  float near_plane = kDefaultNearPlane;
  bool normalize_depth = false;  // divide accumulated depth by accumulated opacity
  int threads = 1;
};

// Compositing constants shared by the tiled rasterizer and the reference
// compositor: contributions with alpha' below the skip threshold are
// ignored, alpha' is clamped, and pixels that accumulate almost nothing are
// flagged as background.
constexpr float kAlphaSkip = 1.0f / 255.0f;
constexpr float kAlphaClamp = 0.99f;
constexpr float kMinPixelAlpha = 1e-3f;
constexpr double kTerminateTransmittance = 1e-4;
constexpr int kTileSize = 16;

/// Tile-binned front-to-back compositor for depth (unnormalized opacity-
/// weighted sum) and semantics (argmax of accumulated one-hot mass, ties to
/// the lowest class). Primitives sort by projected depth, ties by input
/// order; compositing stops once transmittance drops below 1e-4.
RenderResult rasterize(const GaussianPrimitiveSet& prims, const Camera& cam,
                       const RasterizeOptions& opts = {});

/// Brute-force per-pixel compositor over every primitive: same contract as
/// rasterize but with no tile culling and no early termination. Serves as
/// the rasterizer's oracle.
RenderResult composite_reference(const GaussianPrimitiveSet& prims, const Camera& cam,
                                 const RasterizeOptions& opts = {});

}  // namespace occscene::gsrender
