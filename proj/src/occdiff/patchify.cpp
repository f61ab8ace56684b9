// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#include "occscene/occdiff/patchify.hpp"

#include "occscene/core/errors.hpp"

namespace occscene::occdiff {

TokenGrid patchify(const LatentVolume& frame, std::uint32_t frame_index, const Condition& bev,
                   std::uint32_t patch, const PatchEmbedder& embedder) {
  frame.validate();
  if (frame_index >= frame.frames) throw IndexOutOfBounds("patchify: frame index out of range");
  if (patch < 1 || frame.height % patch != 0 || frame.width % patch != 0)
    throw DimMismatch("patch size must divide the latent resolution");
  std::uint32_t cb = 0;
  if (!bev.null) {
    if (bev.height != frame.height || bev.width != frame.width)
      throw DimMismatch("condition resolution does not match the latent");
    cb = bev.channels;
  }
  const std::uint32_t c_total = frame.channels + cb;
  const std::uint32_t plen = c_total * patch * patch;
  if (embedder.in_dim != plen)
    throw DimMismatch("embedder expects " + std::to_string(embedder.in_dim) +
                      " inputs, patch vectors have " + std::to_string(plen));

  TokenGrid grid;
  grid.patch = patch;
  grid.source_h = frame.height;
  grid.source_w = frame.width;
  grid.source_channels = c_total;
  const std::uint32_t py = frame.height / patch, px = frame.width / patch;
  grid.tokens = py * px;
  grid.embed_dim = embedder.identity() ? plen : embedder.out_dim;
  grid.values.assign(std::size_t(grid.tokens) * grid.embed_dim, 0.0);

  std::vector<double> pvec(plen);
  for (std::uint32_t ty = 0; ty < py; ++ty)
    for (std::uint32_t tx = 0; tx < px; ++tx) {
      // Patch vector layout: channel-major, then row, then column.
      std::size_t o = 0;
      for (std::uint32_t c = 0; c < c_total; ++c)
        for (std::uint32_t dy = 0; dy < patch; ++dy)
          for (std::uint32_t dx = 0; dx < patch; ++dx) {
            const std::uint32_t y = ty * patch + dy, x = tx * patch + dx;
            pvec[o++] = c < frame.channels
                            ? frame.values[frame.index(frame_index, c, y, x)]
                            : bev.data[(std::size_t(c - frame.channels) * bev.height + y) *
                                           bev.width +
                                       x];
          }
      double* tok = grid.values.data() + std::size_t(ty * px + tx) * grid.embed_dim;
      if (embedder.identity()) {
        for (std::uint32_t e = 0; e < grid.embed_dim; ++e) tok[e] = pvec[e];
      } else {
        for (std::uint32_t e = 0; e < grid.embed_dim; ++e) {
          double acc = 0.0;
          const double* row = embedder.weights.data() + std::size_t(e) * embedder.in_dim;
          for (std::uint32_t i = 0; i < embedder.in_dim; ++i) acc += row[i] * pvec[i];
          tok[e] = acc;
        }
      }
    }
  return grid;
}

LatentVolume unpatchify(const TokenGrid& tokens, const PatchEmbedder& unembedder) {
  const std::uint32_t plen =
      unembedder.identity() ? tokens.embed_dim : unembedder.out_dim;
  if (unembedder.in_dim != tokens.embed_dim)
    throw DimMismatch("un-embedder expects " + std::to_string(unembedder.in_dim) +
                      " inputs, tokens have " + std::to_string(tokens.embed_dim));
  const std::uint32_t patch = tokens.patch;
  if (patch < 1 || plen % (patch * patch) != 0)
    throw DimMismatch("token length is not divisible by the patch area");
  const std::uint32_t channels = plen / (patch * patch);
  if (channels != tokens.source_channels)
    throw DimMismatch("token channel count disagrees with the recorded source");
  const std::uint32_t py = tokens.source_h / patch, px = tokens.source_w / patch;
  if (py * px != tokens.tokens) throw DimMismatch("token count disagrees with the source dims");

  LatentVolume out = LatentVolume::zeros(1, channels, tokens.source_h, tokens.source_w);
  std::vector<double> pvec(plen);
  for (std::uint32_t ty = 0; ty < py; ++ty)
    for (std::uint32_t tx = 0; tx < px; ++tx) {
      const double* tok = tokens.values.data() + std::size_t(ty * px + tx) * tokens.embed_dim;
      if (unembedder.identity()) {
        for (std::uint32_t e = 0; e < plen; ++e) pvec[e] = tok[e];
      } else {
        for (std::uint32_t e = 0; e < plen; ++e) {
          double acc = 0.0;
          const double* row = unembedder.weights.data() + std::size_t(e) * unembedder.in_dim;
          for (std::uint32_t i = 0; i < unembedder.in_dim; ++i) acc += row[i] * tok[i];
          pvec[e] = acc;
        }
      }
      std::size_t o = 0;
      for (std::uint32_t c = 0; c < channels; ++c)
        for (std::uint32_t dy = 0; dy < patch; ++dy)
          for (std::uint32_t dx = 0; dx < patch; ++dx)
            out.values[out.index(0, c, ty * patch + dy, tx * patch + dx)] = pvec[o++];
    }
  return out;
}

ForecastPack forecast_pack(const LatentVolume& clean_frames, const LatentVolume& noise_frames,
                           std::uint32_t schedule_step) {
  clean_frames.validate();
  noise_frames.validate();
  if (clean_frames.channels != noise_frames.channels ||
      clean_frames.height != noise_frames.height || clean_frames.width != noise_frames.width)
    throw ShapeMismatch("conditional and future frames disagree in shape");

  const std::uint32_t tc = clean_frames.frames, tf = noise_frames.frames;
  ForecastPack pack;
  pack.step = schedule_step;
  pack.volume = LatentVolume::zeros(tc + tf, clean_frames.channels, clean_frames.height,
                                    clean_frames.width);
  const std::size_t fs = pack.volume.frame_size();
  for (std::uint32_t t = 0; t < tc; ++t) {
    std::copy_n(clean_frames.frame(t), fs, pack.volume.frame(t));
    pack.volume.timestamps[t] = clean_frames.timestamps[t];
  }
  for (std::uint32_t t = 0; t < tf; ++t) {
    std::copy_n(noise_frames.frame(t), fs, pack.volume.frame(tc + t));
    pack.volume.timestamps[tc + t] = noise_frames.timestamps[t];
  }
  pack.loss_mask.assign(tc + tf, 1.0);
  for (std::uint32_t t = 0; t < tc; ++t) pack.loss_mask[t] = 0.0;
  return pack;
}

}  // namespace occscene::occdiff
