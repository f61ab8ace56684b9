// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "occscene/occdiff/latent.hpp"
#include "occscene/voxgrid/grid.hpp"

namespace occscene::occdiff {

/// Conditioning channels for the denoiser: a one-hot class stack aligned to
/// the latent resolution, or null for the unconditional branch.
struct Condition {
  std::uint32_t channels = 0, height = 0, width = 0;
  std::vector<double> data;  // [(c * height + y) * width + x]
  bool null = true;

  static Condition none() { return Condition{}; }
};

/// Nearest-neighbor pooling of layout codes into a one-hot channel stack of
/// palette_size channels at (height, width).
Condition layout_condition(const voxgrid::BevLayout& layout, std::uint32_t height,
                           std::uint32_t width);

/// Noise-prediction interface: shape-preserving and deterministic. The step
/// index is the schedule timestep the latent currently sits at.
class Denoiser {
 public:
  virtual ~Denoiser() = default;
  virtual LatentVolume predict(const LatentVolume& latent, std::uint32_t step,
                               const Condition& condition) const = 0;
};

/// Predicts zero noise regardless of input.
class ZeroDenoiser final : public Denoiser {
 public:
  LatentVolume predict(const LatentVolume& latent, std::uint32_t step,
                       const Condition& condition) const override;
};

/// eps_hat = a (elementwise) * latent with a fixed seeded diagonal
/// coefficient field. Coefficients are uniform in [-amplitude, amplitude];
/// round-trip inversion error grows linearly with the amplitude, and the
/// default keeps 50-step round trips several times inside 1e-4.
class LinearDenoiser final : public Denoiser {
 public:
  explicit LinearDenoiser(std::uint64_t seed, double amplitude = 2e-5)
      : seed_(seed), amplitude_(amplitude) {}
  LatentVolume predict(const LatentVolume& latent, std::uint32_t step,
                       const Condition& condition) const override;
  double coefficient(std::size_t flat_index) const;

 private:
  std::uint64_t seed_;
  double amplitude_;
};

/// LinearDenoiser plus a seeded projection of the condition channels, so
/// editing tests can observe condition sensitivity. With a null condition it
/// reduces to the plain linear map.
class ConditionAdditiveDenoiser final : public Denoiser {
 public:
  explicit ConditionAdditiveDenoiser(std::uint64_t seed, double amplitude = 2e-5,
                                     double condition_gain = 1e-3)
      : linear_(seed, amplitude), seed_(seed), condition_gain_(condition_gain) {}
  LatentVolume predict(const LatentVolume& latent, std::uint32_t step,
                       const Condition& condition) const override;

 private:
  LinearDenoiser linear_;
  std::uint64_t seed_;
  double condition_gain_;
};

}  // namespace occscene::occdiff
