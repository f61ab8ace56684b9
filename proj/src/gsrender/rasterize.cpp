// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#include "occscene/gsrender/rasterize.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "occscene/core/errors.hpp"
#include "occscene/core/parallel.hpp"

namespace occscene::gsrender {
namespace {

// Screen-space primitive after projection, conic inversion and the global
// front-to-back sort. Both compositors consume this identical list, so any
// output difference comes from tiling / early termination alone.
struct ScreenPrim {
  double mx, my;          // projected mean, pixels
  double ca, cb, cc;      // conic = inverse cov2d (a, b, c)
  double alpha;
  double qmax;            // mahalanobis^2 above which alpha' < 1/255
  float depth;
  float radius;           // conservative footprint radius, pixels
  std::uint8_t label;
};

std::vector<ScreenPrim> prepare(const GaussianPrimitiveSet& prims, const Camera& cam,
                                float near_plane) {
  cam.validate();
  std::vector<ScreenPrim> out;
  out.reserve(prims.size());
  for (const auto& p : prims) {
    p.validate();
    const auto proj = project_gaussian(p, cam, near_plane);
    if (!proj) continue;
    if (p.opacity < kAlphaSkip) continue;  // below the skip threshold everywhere
    const double a = proj->cov2d(0, 0), b = proj->cov2d(0, 1), c = proj->cov2d(1, 1);
    const double det = a * c - b * b;
    if (det <= 0.0) continue;  // floor guarantees this never triggers in practice
    ScreenPrim sp;
    sp.mx = proj->mean2d.x();
    sp.my = proj->mean2d.y();
    sp.ca = c / det;
    sp.cb = -b / det;
    sp.cc = a / det;
    sp.alpha = p.opacity;
    sp.qmax = 2.0 * std::log(255.0 * sp.alpha);
    sp.depth = proj->depth;
    sp.label = p.label;
    // alpha' >= 1/255 requires mahalanobis^2 <= 2 ln(255 alpha); the max
    // eigenvalue bounds the reach of that level set.
    const double lmax = 0.5 * (a + c) + std::sqrt(0.25 * (a - c) * (a - c) + b * b);
    sp.radius = float(std::sqrt(sp.qmax * lmax)) + 1.0f;
    out.push_back(sp);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const ScreenPrim& l, const ScreenPrim& r) { return l.depth < r.depth; });
  return out;
}

// Per-pixel accumulator with O(1) class reset via epoch stamping.
struct PixelAccum {
  std::array<double, 256> mass{};
  std::array<std::uint32_t, 256> stamp{};
  std::array<std::uint8_t, 64> touched{};
  std::uint32_t epoch = 0;
  int touched_count = 0;

  void reset() {
    ++epoch;
    touched_count = 0;
  }
  void add(std::uint8_t cls, double m) {
    if (stamp[cls] != epoch) {
      stamp[cls] = epoch;
      mass[cls] = 0.0;
      if (touched_count < int(touched.size())) touched[touched_count] = cls;
      ++touched_count;
    }
    mass[cls] += m;
  }
  std::uint8_t argmax() const {
    if (touched_count == 0) return kNoClass;
    if (touched_count <= int(touched.size())) {
      double best = -1.0;
      std::uint32_t best_cls = kNoClass;
      for (int t = 0; t < touched_count; ++t) {
        const std::uint8_t cls = touched[t];
        if (stamp[cls] != epoch) continue;
        const double m = mass[cls];
        if (m > best || (m == best && cls < best_cls)) {
          best = m;
          best_cls = cls;
        }
      }
      return std::uint8_t(best_cls);
    }
    // Touched-list overflow: scan every class in order.
    double best = -1.0;
    std::uint32_t best_cls = kNoClass;
    for (std::uint32_t cls = 0; cls < 256; ++cls) {
      if (stamp[cls] != epoch) continue;
      if (mass[cls] > best) {
        best = mass[cls];
        best_cls = cls;
      }
    }
    return std::uint8_t(best_cls);
  }
};

void finalize_pixel(double depth_acc, double trans, const PixelAccum& acc, bool normalize,
                    float& depth_out, float& alpha_out, std::uint8_t& label_out) {
  const double alpha = 1.0 - trans;
  alpha_out = float(alpha);
  if (alpha < kMinPixelAlpha) {
    depth_out = 0.0f;
    label_out = kNoClass;
    return;
  }
  depth_out = float(normalize ? depth_acc / alpha : depth_acc);
  label_out = acc.argmax();
}

}  // namespace

RenderResult rasterize(const GaussianPrimitiveSet& prims, const Camera& cam,
                       const RasterizeOptions& opts) {
  const std::vector<ScreenPrim> sps = prepare(prims, cam, opts.near_plane);

  RenderResult res;
  res.depth.width = res.semantics.width = cam.width;
  res.depth.height = res.semantics.height = cam.height;
  res.depth.values.assign(std::size_t(cam.width) * cam.height, 0.0f);
  res.depth.alpha.assign(std::size_t(cam.width) * cam.height, 0.0f);
  res.semantics.labels.assign(std::size_t(cam.width) * cam.height, kNoClass);

  const int tiles_x = int((cam.width + kTileSize - 1) / kTileSize);
  const int tiles_y = int((cam.height + kTileSize - 1) / kTileSize);

  // Bin primitive ids per tile; sorted order is preserved because the
  // primitives are visited in sorted order.
  std::vector<std::vector<std::uint32_t>> bins(std::size_t(tiles_x) * tiles_y);
  for (std::uint32_t id = 0; id < sps.size(); ++id) {
    const auto& sp = sps[id];
    const int x0 = std::max(0, int(std::floor((sp.mx - sp.radius) / kTileSize)));
    const int x1 = std::min(tiles_x - 1, int(std::floor((sp.mx + sp.radius) / kTileSize)));
    const int y0 = std::max(0, int(std::floor((sp.my - sp.radius) / kTileSize)));
    const int y1 = std::min(tiles_y - 1, int(std::floor((sp.my + sp.radius) / kTileSize)));
    for (int ty = y0; ty <= y1; ++ty)
      for (int tx = x0; tx <= x1; ++tx) bins[std::size_t(ty) * tiles_x + tx].push_back(id);
  }

  parallel_for(
      0, std::int64_t(tiles_x) * tiles_y,
      [&](std::int64_t tile) {
        const auto& bin = bins[std::size_t(tile)];
        const int tx = int(tile % tiles_x), ty = int(tile / tiles_x);
        const std::uint32_t px0 = std::uint32_t(tx) * kTileSize;
        const std::uint32_t py0 = std::uint32_t(ty) * kTileSize;
        const std::uint32_t px1 = std::min(cam.width, px0 + kTileSize);
        const std::uint32_t py1 = std::min(cam.height, py0 + kTileSize);
        PixelAccum acc;
        for (std::uint32_t y = py0; y < py1; ++y)
          for (std::uint32_t x = px0; x < px1; ++x) {
            acc.reset();
            double trans = 1.0;
            double depth_acc = 0.0;
            const double px = x + 0.5, py = y + 0.5;
            for (const std::uint32_t id : bin) {
              const auto& sp = sps[id];
              const double dx = px - sp.mx, dy = py - sp.my;
              const double q = sp.ca * dx * dx + 2.0 * sp.cb * dx * dy + sp.cc * dy * dy;
              if (q > sp.qmax) continue;  // alpha' < 1/255, skip without the exp
              double a = sp.alpha * std::exp(-0.5 * q);
              if (a < kAlphaSkip) continue;
              if (a > kAlphaClamp) a = kAlphaClamp;
              const double w = a * trans;
              depth_acc += w * sp.depth;
              acc.add(sp.label, w);
              trans *= 1.0 - a;
              if (trans < kTerminateTransmittance) break;
            }
            const std::size_t idx = res.depth.index(x, y);
            finalize_pixel(depth_acc, trans, acc, opts.normalize_depth, res.depth.values[idx],
                           res.depth.alpha[idx], res.semantics.labels[idx]);
          }
      },
      opts.threads);
  return res;
}

RenderResult composite_reference(const GaussianPrimitiveSet& prims, const Camera& cam,
                                 const RasterizeOptions& opts) {
  const std::vector<ScreenPrim> sps = prepare(prims, cam, opts.near_plane);

  RenderResult res;
  res.depth.width = res.semantics.width = cam.width;
  res.depth.height = res.semantics.height = cam.height;
  res.depth.values.assign(std::size_t(cam.width) * cam.height, 0.0f);
  res.depth.alpha.assign(std::size_t(cam.width) * cam.height, 0.0f);
  res.semantics.labels.assign(std::size_t(cam.width) * cam.height, kNoClass);

  PixelAccum acc;
  for (std::uint32_t y = 0; y < cam.height; ++y)
    for (std::uint32_t x = 0; x < cam.width; ++x) {
      acc.reset();
      double trans = 1.0;
      double depth_acc = 0.0;
      const double px = x + 0.5, py = y + 0.5;
      for (const auto& sp : sps) {
        const double dx = px - sp.mx, dy = py - sp.my;
        const double q = sp.ca * dx * dx + 2.0 * sp.cb * dx * dy + sp.cc * dy * dy;
        if (q > sp.qmax) continue;  // same shortcut as the rasterizer
        double a = sp.alpha * std::exp(-0.5 * q);
        if (a < kAlphaSkip) continue;
        if (a > kAlphaClamp) a = kAlphaClamp;
        const double w = a * trans;
        depth_acc += w * sp.depth;
        acc.add(sp.label, w);
        trans *= 1.0 - a;
        // No early termination: this is the ground-truth compositor.
      }
      const std::size_t idx = res.depth.index(x, y);
      finalize_pixel(depth_acc, trans, acc, opts.normalize_depth, res.depth.values[idx],
                     res.depth.alpha[idx], res.semantics.labels[idx]);
    }
  return res;
}

}  // namespace occscene::gsrender
