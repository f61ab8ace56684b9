// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "occscene/occdiff/denoiser.hpp"
#include "occscene/occdiff/latent.hpp"

namespace occscene::occdiff {

/// L x E_d tokens cut from a (C x h x w) frame in row-major patch order.
struct TokenGrid {
  std::uint32_t tokens = 0;     // L = (h/P) * (w/P)
  std::uint32_t embed_dim = 0;  // E_d
  std::uint32_t patch = 1;      // P
  std::uint32_t source_h = 0, source_w = 0, source_channels = 0;
  std::vector<double> values;  // [token * embed_dim + e]
};

/// Linear patch embedder, E_d x (C * P * P). An empty matrix means identity
/// (E_d = C * P * P).
struct PatchEmbedder {
  std::uint32_t in_dim = 0, out_dim = 0;
  std::vector<double> weights;  // row-major out_dim x in_dim; empty = identity

  bool identity() const { return weights.empty(); }
  static PatchEmbedder make_identity(std::uint32_t dim) { return {dim, dim, {}}; }
};

/// Channel-concatenate one latent frame with the condition stack, cut into
/// P x P patches row-major, and linearly embed each. Patch vectors are laid
/// out channel-major, then row, then column. Throws DimMismatch when P does
/// not divide the resolution or the embedder input dim disagrees.
TokenGrid patchify(const LatentVolume& frame, std::uint32_t frame_index, const Condition& bev,
                   std::uint32_t patch, const PatchEmbedder& embedder);

/// Exact inverse layout of patchify: un-embeds each token and scatters the
/// patch vectors back into a (C x h x w) frame (C inferred from the token
/// length). With the identity embedder pair the round trip is lossless.
LatentVolume unpatchify(const TokenGrid& tokens, const PatchEmbedder& unembedder);

/// Packed forecasting input: conditional frames stay clean, future frames
/// carry the provided noise/noised latents, and the per-frame loss mask is 0
/// on conditional frames and 1 on future frames.
struct ForecastPack {
  LatentVolume volume;
  std::vector<double> loss_mask;  // one entry per frame
  std::uint32_t step = 0;         // schedule step the future frames sit at
};

ForecastPack forecast_pack(const LatentVolume& clean_frames, const LatentVolume& noise_frames,
                           std::uint32_t schedule_step);

}  // namespace occscene::occdiff
