// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#include "occscene/lidarsim/head.hpp"

#include <cmath>
#include <cstring>

#include "occscene/core/errors.hpp"
#include "occscene/voxgrid/codec.hpp"

namespace occscene::lidarsim {

Eigen::VectorXd Mlp::forward(const Eigen::VectorXd& x) const {
  if (layers.empty()) return x;
  Eigen::VectorXd h = x;
  for (std::size_t li = 0; li < layers.size(); ++li) {
    const Layer& l = layers[li];
    if (h.size() != l.in)
      throw ShapeMismatch("mlp layer " + std::to_string(li) + " expects " + std::to_string(l.in) +
                          " inputs, got " + std::to_string(h.size()));
    Eigen::VectorXd next(l.out);
    for (std::uint32_t o = 0; o < l.out; ++o) {
      double acc = l.biases[o];
      const float* row = l.weights.data() + std::size_t(o) * l.in;
      for (std::uint32_t i = 0; i < l.in; ++i) acc += double(row[i]) * h[i];
      next[o] = acc;
    }
    if (li + 1 < layers.size()) next = next.cwiseMax(0.0);  // ReLU between layers
    h = std::move(next);
  }
  return h;
}

void Mlp::validate() const {
  for (std::size_t li = 0; li < layers.size(); ++li) {
    const Layer& l = layers[li];
    if (l.in < 1 || l.out < 1) throw InvalidArgument("mlp layer dims must be >= 1");
    if (l.weights.size() != std::size_t(l.in) * l.out || l.biases.size() != l.out)
      throw ShapeMismatch("mlp layer " + std::to_string(li) + " weight/bias sizes inconsistent");
    for (float w : l.weights)
      if (!std::isfinite(w)) throw InvalidArgument("mlp weights must be finite");
    for (float b : l.biases)
      if (!std::isfinite(b)) throw InvalidArgument("mlp biases must be finite");
    if (li > 0 && layers[li - 1].out != l.in)
      throw ShapeMismatch("mlp layer " + std::to_string(li) + " input does not chain");
  }
}

LidarHead LidarHead::analytic_default() {
  LidarHead head;
  // Identity SDF head; pass-through linear heads for intensity and drop.
  Mlp::Layer passthrough{1, 1, {1.0f}, {0.0f}};
  head.intensity_mlp.layers = {passthrough};
  head.drop_mlp.layers = {passthrough};
  return head;
}

void LidarHead::validate(std::uint32_t feature_dim) const {
  if (!(sharpness > 0.0)) throw InvalidArgument("head sharpness must be > 0");
  sdf_mlp.validate();
  intensity_mlp.validate();
  drop_mlp.validate();
  if (!sdf_mlp.identity()) {
    if (sdf_mlp.input_dim() != feature_dim)
      throw ShapeMismatch("sdf head input dim != provider feature dim");
    if (sdf_mlp.output_dim() != 1) throw ShapeMismatch("sdf head must output a scalar");
  } else if (feature_dim != 1) {
    throw ShapeMismatch("identity sdf head requires scalar features");
  }
  if (!intensity_mlp.identity()) {
    if (intensity_mlp.input_dim() != feature_dim)
      throw ShapeMismatch("intensity head input dim != provider feature dim");
    if (intensity_mlp.output_dim() != 1) throw ShapeMismatch("intensity head must output a scalar");
  }
  if (!drop_mlp.identity()) {
    if (drop_mlp.input_dim() != feature_dim)
      throw ShapeMismatch("drop head input dim != provider feature dim");
    if (drop_mlp.output_dim() != 1) throw ShapeMismatch("drop head must output a scalar");
  }
}

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(std::uint8_t(v & 0xff));
  out.push_back(std::uint8_t((v >> 8) & 0xff));
  out.push_back(std::uint8_t((v >> 16) & 0xff));
  out.push_back(std::uint8_t((v >> 24) & 0xff));
}

void put_f32(std::vector<std::uint8_t>& out, float v) {
  std::uint32_t bits;
  std::memcpy(&bits, &v, 4);
  put_u32(out, bits);
}

struct Cursor {
  const std::vector<std::uint8_t>& bytes;
  std::size_t pos = 0;

  std::uint32_t u32() {
    need(4);
    std::uint32_t v = std::uint32_t(bytes[pos]) | (std::uint32_t(bytes[pos + 1]) << 8) |
                      (std::uint32_t(bytes[pos + 2]) << 16) |
                      (std::uint32_t(bytes[pos + 3]) << 24);
    pos += 4;
    return v;
  }
  float f32() {
    std::uint32_t bits = u32();
    float v;
    std::memcpy(&v, &bits, 4);
    return v;
  }
  void need(std::size_t n) {
    if (bytes.size() - pos < n) throw TruncatedPayload("LHED: truncated");
  }
};

void encode_mlp(std::vector<std::uint8_t>& out, const Mlp& mlp) {
  put_u32(out, std::uint32_t(mlp.layers.size()));
  for (const auto& l : mlp.layers) {
    put_u32(out, l.in);
    put_u32(out, l.out);
    for (float w : l.weights) put_f32(out, w);
    for (float b : l.biases) put_f32(out, b);
  }
}

Mlp decode_mlp(Cursor& c) {
  Mlp mlp;
  const std::uint32_t count = c.u32();
  mlp.layers.resize(count);
  for (auto& l : mlp.layers) {
    l.in = c.u32();
    l.out = c.u32();
    l.weights.resize(std::size_t(l.in) * l.out);
    for (auto& w : l.weights) w = c.f32();
    l.biases.resize(l.out);
    for (auto& b : l.biases) b = c.f32();
  }
  mlp.validate();
  return mlp;
}

}  // namespace

std::vector<std::uint8_t> encode_head(const LidarHead& head) {
  std::vector<std::uint8_t> out;
  out.insert(out.end(), {'L', 'H', 'E', 'D'});
  put_u32(out, 1);
  encode_mlp(out, head.sdf_mlp);
  encode_mlp(out, head.intensity_mlp);
  encode_mlp(out, head.drop_mlp);
  return out;
}

LidarHead decode_head(const std::vector<std::uint8_t>& bytes) {
  Cursor c{bytes};
  c.need(4);
  if (std::memcmp(bytes.data(), "LHED", 4) != 0) throw BadMagic("LHED: bad magic");
  c.pos = 4;
  const std::uint32_t version = c.u32();
  if (version != 1)
    throw VersionUnsupported("LHED: version " + std::to_string(version) + " unsupported");
  LidarHead head;
  head.sdf_mlp = decode_mlp(c);
  head.intensity_mlp = decode_mlp(c);
  head.drop_mlp = decode_mlp(c);
  return head;
}

LidarHead load_head(const std::string& path) {
  try {
    return decode_head(voxgrid::read_file(path));
  } catch (const Error& e) {
    throw IoError(path + ": " + e.what());
  }
}

void save_head(const std::string& path, const LidarHead& head) {
  voxgrid::write_file(path, encode_head(head));
}

}  // namespace occscene::lidarsim
