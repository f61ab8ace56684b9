// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#include "occscene/occdiff/denoiser.hpp"

#include "occscene/core/errors.hpp"
#include "occscene/core/rng.hpp"

namespace occscene::occdiff {

Condition layout_condition(const voxgrid::BevLayout& layout, std::uint32_t height,
                           std::uint32_t width) {
  layout.validate();
  Condition cond;
  cond.null = false;
  cond.channels = layout.palette_size;
  cond.height = height;
  cond.width = width;
  cond.data.assign(std::size_t(cond.channels) * height * width, 0.0);
  for (std::uint32_t y = 0; y < height; ++y)
    for (std::uint32_t x = 0; x < width; ++x) {
      // Nearest-neighbor pooling of layout cells onto the latent grid.
      const auto li = std::uint32_t((std::uint64_t(y) * layout.dims[0]) / height);
      const auto lj = std::uint32_t((std::uint64_t(x) * layout.dims[1]) / width);
      const std::uint8_t code = layout.at(li, lj);
      cond.data[(std::size_t(code) * height + y) * width + x] = 1.0;
    }
  return cond;
}

LatentVolume ZeroDenoiser::predict(const LatentVolume& latent, std::uint32_t, const Condition&)
    const {
  LatentVolume out = latent;
  std::fill(out.values.begin(), out.values.end(), 0.0);
  return out;
}

double LinearDenoiser::coefficient(std::size_t flat_index) const {
  return amplitude_ * (2.0 * uniform01(seed_, flat_index) - 1.0);
}

LatentVolume LinearDenoiser::predict(const LatentVolume& latent, std::uint32_t,
                                     const Condition&) const {
  LatentVolume out = latent;
  const std::size_t fs = latent.frame_size();
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = coefficient(i % fs) * latent.values[i];
  return out;
}

LatentVolume ConditionAdditiveDenoiser::predict(const LatentVolume& latent, std::uint32_t step,
                                                const Condition& condition) const {
  LatentVolume out = linear_.predict(latent, step, condition);
  if (condition.null) return out;
  if (condition.height != latent.height || condition.width != latent.width)
    throw ShapeMismatch("condition resolution does not match the latent");
  // Seeded per-(latent channel, condition channel) mixing of the one-hot
  // stack, added at the aligned spatial position.
  for (std::uint32_t t = 0; t < latent.frames; ++t)
    for (std::uint32_t c = 0; c < latent.channels; ++c)
      for (std::uint32_t cb = 0; cb < condition.channels; ++cb) {
        const double w =
            condition_gain_ *
            (2.0 * uniform01(seed_ ^ 0xc0dd1eull, std::size_t(c) * condition.channels + cb) -
             1.0);
        if (w == 0.0) continue;
        for (std::uint32_t y = 0; y < latent.height; ++y)
          for (std::uint32_t x = 0; x < latent.width; ++x)
            out.values[out.index(t, c, y, x)] +=
                w * condition.data[(std::size_t(cb) * condition.height + y) * condition.width + x];
      }
  return out;
}

}  // namespace occscene::occdiff
