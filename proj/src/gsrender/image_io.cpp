// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#include "occscene/gsrender/image_io.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

#include "occscene/core/errors.hpp"

namespace occscene::gsrender {

void write_pfm(const std::string& path, const std::vector<float>& values, std::uint32_t width,
               std::uint32_t height) {
  if (values.size() != std::size_t(width) * height)
    throw ShapeMismatch("pfm: value count does not match resolution");
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for writing: " + path);
  f << "Pf\n" << width << " " << height << "\n-1.0\n";
  // PFM stores rows bottom-to-top.
  for (std::int64_t y = std::int64_t(height) - 1; y >= 0; --y)
    f.write(reinterpret_cast<const char*>(values.data() + std::size_t(y) * width),
            std::streamsize(width) * 4);
  if (!f) throw IoError("write failed: " + path);
}

PfmImage read_pfm(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open: " + path);
  std::string magic;
  f >> magic;
  if (magic != "Pf") throw BadMagic(path + ": not a grayscale PFM");
  PfmImage img;
  double scale;
  f >> img.width >> img.height >> scale;
  if (!f || img.width < 1 || img.height < 1)
    throw TruncatedPayload(path + ": bad PFM header");
  if (scale >= 0.0) throw VersionUnsupported(path + ": big-endian PFM unsupported");
  f.get();  // single whitespace after the scale
  img.values.resize(std::size_t(img.width) * img.height);
  for (std::int64_t y = std::int64_t(img.height) - 1; y >= 0; --y)
    f.read(reinterpret_cast<char*>(img.values.data() + std::size_t(y) * img.width),
           std::streamsize(img.width) * 4);
  if (!f) throw TruncatedPayload(path + ": truncated PFM payload");
  return img;
}

void write_pgm(const std::string& path, const std::vector<std::uint8_t>& values,
               std::uint32_t width, std::uint32_t height) {
  if (values.size() != std::size_t(width) * height)
    throw ShapeMismatch("pgm: value count does not match resolution");
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for writing: " + path);
  f << "P5\n" << width << " " << height << "\n255\n";
  f.write(reinterpret_cast<const char*>(values.data()), std::streamsize(values.size()));
  if (!f) throw IoError("write failed: " + path);
}

void write_depth_pfm(const std::string& path, const DepthMap& depth) {
  write_pfm(path, depth.values, depth.width, depth.height);
}

void write_semantic_pgm(const std::string& path, const SemanticMap& sem) {
  write_pgm(path, sem.labels, sem.width, sem.height);
}

}  // namespace occscene::gsrender
