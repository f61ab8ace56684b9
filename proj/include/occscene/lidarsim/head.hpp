// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

namespace occscene::lidarsim {

/// Plain fully connected stack with ReLU between layers and a linear output.
/// An empty layer list is the identity map.
struct Mlp {
  struct Layer {
    std::uint32_t in = 0, out = 0;
    std::vector<float> weights;  // row-major, out x in
    std::vector<float> biases;   // out
  };
  std::vector<Layer> layers;

  bool identity() const { return layers.empty(); }
  std::uint32_t input_dim() const { return layers.empty() ? 0 : layers.front().in; }
  std::uint32_t output_dim() const { return layers.empty() ? 0 : layers.back().out; }

  Eigen::VectorXd forward(const Eigen::VectorXd& x) const;
  void validate() const;
};

/// SDF / intensity / ray-drop heads plus the sigmoid sharpness used by the
/// volume-rendering weights.
struct LidarHead {
  Mlp sdf_mlp;        // feature -> scalar SDF; identity passes feature[0] through
  Mlp intensity_mlp;  // ray feature -> scalar logit
  Mlp drop_mlp;       // ray feature -> scalar logit
  double sharpness = 100.0;

  /// Identity SDF plus pass-through 1->1 intensity/drop heads for the
  /// analytic provider.
  static LidarHead analytic_default();

  void validate(std::uint32_t feature_dim) const;
};

// "LHED" binary: magic | version u32 | three MLPs (sdf, intensity, drop),
// each: layer count u32, then per layer (in, out) u32, row-major f32
// weights, f32 biases. Little-endian.
std::vector<std::uint8_t> encode_head(const LidarHead& head);
LidarHead decode_head(const std::vector<std::uint8_t>& bytes);
LidarHead load_head(const std::string& path);
void save_head(const std::string& path, const LidarHead& head);

}  // namespace occscene::lidarsim
