// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#include "occscene/geomwarp/noise_prior.hpp"

#include <cmath>

#include "occscene/core/errors.hpp"
#include "occscene/core/rng.hpp"

namespace occscene::geomwarp {

LatentImage build_noise_prior(const LatentImage& z_c, const gsrender::DepthMap& depth,
                              const gsrender::Camera& cam_ref, const gsrender::Camera& cam_tgt,
                              const NoiseSpec& spec, bool zero_noise) {
  if (!std::isfinite(spec.lambda) || spec.lambda < 0.0f)
    throw InvalidArgument("noise prior lambda must be finite and >= 0");

  LatentImage prior;
  std::vector<std::uint8_t> valid;
  if (spec.mode == NoiseMode::kGeometric && spec.lambda != 0.0f) {
    WarpResult w = warp_latent(z_c, depth, cam_ref, cam_tgt);
    prior = std::move(w.latent);
    valid = std::move(w.valid);
  } else {
    z_c.validate();
    prior = z_c;  // vanilla: the conditional latent itself is the prior
    valid.assign(std::size_t(z_c.height) * z_c.width, 1);
  }

  LatentImage eps = prior;
  for (std::uint32_t y = 0; y < eps.height; ++y)
    for (std::uint32_t x = 0; x < eps.width; ++x) {
      const bool ok = valid[std::size_t(y) * eps.width + x] != 0;
      for (std::uint32_t c = 0; c < eps.channels; ++c) {
        const std::size_t i = eps.index(x, y, c);
        const float n = zero_noise ? 0.0f : float(normal01(spec.seed, i));
        // Invalid warp pixels receive pure noise.
        eps.values[i] = (ok ? spec.lambda * prior.values[i] : 0.0f) + n;
      }
    }
  return eps;
}

}  // namespace occscene::geomwarp
