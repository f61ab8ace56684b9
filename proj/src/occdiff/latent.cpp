// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#include "occscene/occdiff/latent.hpp"

#include <cmath>
#include <cstring>

#include "occscene/core/errors.hpp"
#include "occscene/voxgrid/codec.hpp"

namespace occscene::occdiff {

LatentVolume LatentVolume::zeros(std::uint32_t frames, std::uint32_t channels,
                                 std::uint32_t height, std::uint32_t width) {
  LatentVolume v;
  v.frames = frames;
  v.channels = channels;
  v.height = height;
  v.width = width;
  v.values.assign(v.size(), 0.0);
  v.timestamps.resize(frames);
  for (std::uint32_t t = 0; t < frames; ++t) v.timestamps[t] = double(t);
  return v;
}

void LatentVolume::validate() const {
  if (frames < 1 || channels < 1 || height < 1 || width < 1)
    throw InvalidArgument("latent volume dims must be >= 1");
  if (values.size() != size()) throw ShapeMismatch("latent volume value count mismatch");
  if (timestamps.size() != frames) throw ShapeMismatch("latent volume timestamp count mismatch");
  for (double v : values)
    if (!std::isfinite(v)) throw InvalidArgument("latent volume values must be finite");
}

namespace {
void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(std::uint8_t(v & 0xff));
  out.push_back(std::uint8_t((v >> 8) & 0xff));
  out.push_back(std::uint8_t((v >> 16) & 0xff));
  out.push_back(std::uint8_t((v >> 24) & 0xff));
}
std::uint32_t get_u32(const std::vector<std::uint8_t>& b, std::size_t pos) {
  return std::uint32_t(b[pos]) | (std::uint32_t(b[pos + 1]) << 8) |
         (std::uint32_t(b[pos + 2]) << 16) | (std::uint32_t(b[pos + 3]) << 24);
}
}  // namespace

std::vector<std::uint8_t> encode_ltnt(const LatentVolume& v) {
  v.validate();
  std::vector<std::uint8_t> out;
  out.reserve(20 + v.size() * 4);
  out.insert(out.end(), {'L', 'T', 'N', 'T'});
  put_u32(out, v.frames);
  put_u32(out, v.channels);
  put_u32(out, v.height);
  put_u32(out, v.width);
  for (double d : v.values) {
    const float f = float(d);
    std::uint32_t bits;
    std::memcpy(&bits, &f, 4);
    put_u32(out, bits);
  }
  return out;
}

LatentVolume decode_ltnt(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 20) throw TruncatedPayload("LTNT: header truncated");
  if (std::memcmp(bytes.data(), "LTNT", 4) != 0) throw BadMagic("LTNT: bad magic");
  LatentVolume v;
  v.frames = get_u32(bytes, 4);
  v.channels = get_u32(bytes, 8);
  v.height = get_u32(bytes, 12);
  v.width = get_u32(bytes, 16);
  if (v.frames < 1 || v.channels < 1 || v.height < 1 || v.width < 1)
    throw TruncatedPayload("LTNT: bad dims");
  const std::size_t n = v.size();
  if (bytes.size() != 20 + n * 4)
    throw TruncatedPayload("LTNT: expected " + std::to_string(20 + n * 4) + " bytes, got " +
                           std::to_string(bytes.size()));
  v.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t bits = get_u32(bytes, 20 + i * 4);
    float f;
    std::memcpy(&f, &bits, 4);
    v.values[i] = double(f);
  }
  v.timestamps.resize(v.frames);
  for (std::uint32_t t = 0; t < v.frames; ++t) v.timestamps[t] = double(t);
  return v;
}

LatentVolume load_ltnt(const std::string& path) {
  try {
    return decode_ltnt(voxgrid::read_file(path));
  } catch (const Error& e) {
    throw IoError(path + ": " + e.what());
  }
}

void save_ltnt(const std::string& path, const LatentVolume& v) {
  voxgrid::write_file(path, encode_ltnt(v));
}

}  // namespace occscene::occdiff
