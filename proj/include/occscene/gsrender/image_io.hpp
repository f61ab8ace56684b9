// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "occscene/gsrender/rasterize.hpp"

namespace occscene::gsrender {

/// Grayscale PFM ("Pf"), scale -1.0 (little-endian), rows bottom-to-top.
void write_pfm(const std::string& path, const std::vector<float>& values, std::uint32_t width,
               std::uint32_t height);

struct PfmImage {
  std::uint32_t width = 0, height = 0;
  std::vector<float> values;  // row-major, top-to-bottom
};
PfmImage read_pfm(const std::string& path);

/// 8-bit binary PGM (P5).
void write_pgm(const std::string& path, const std::vector<std::uint8_t>& values,
               std::uint32_t width, std::uint32_t height);

void write_depth_pfm(const std::string& path, const DepthMap& depth);
void write_semantic_pgm(const std::string& path, const SemanticMap& sem);

}  // namespace occscene::gsrender
