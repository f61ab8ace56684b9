// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace occscene::occdiff {

/// T x C x h x w latent sequence. Values are doubles in memory; the LTNT
/// file format stores float32.
struct LatentVolume {
  std::uint32_t frames = 1;    // T
  std::uint32_t channels = 1;  // C
  std::uint32_t height = 1;    // h
  std::uint32_t width = 1;     // w
  std::vector<double> values;  // [((t * C + c) * h + y) * w + x]
  std::vector<double> timestamps;  // one per frame

  std::size_t frame_size() const { return std::size_t(channels) * height * width; }
  std::size_t size() const { return frame_size() * frames; }
  std::size_t index(std::uint32_t t, std::uint32_t c, std::uint32_t y, std::uint32_t x) const {
    return ((std::size_t(t) * channels + c) * height + y) * width + x;
  }
  double* frame(std::uint32_t t) { return values.data() + std::size_t(t) * frame_size(); }
  const double* frame(std::uint32_t t) const {
    return values.data() + std::size_t(t) * frame_size();
  }

  static LatentVolume zeros(std::uint32_t frames, std::uint32_t channels, std::uint32_t height,
                            std::uint32_t width);
  void validate() const;
};

// LTNT tensor file: magic "LTNT" then T, C, h, w as u32, then row-major f32
// values, all little-endian.
std::vector<std::uint8_t> encode_ltnt(const LatentVolume& v);
LatentVolume decode_ltnt(const std::vector<std::uint8_t>& bytes);
LatentVolume load_ltnt(const std::string& path);
void save_ltnt(const std::string& path, const LatentVolume& v);

}  // namespace occscene::occdiff
