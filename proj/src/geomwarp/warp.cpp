// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#include "occscene/geomwarp/warp.hpp"

#include <cmath>

#include "occscene/core/errors.hpp"

namespace occscene::geomwarp {

void LatentImage::validate() const {
  if (height < 1 || width < 1 || channels < 1)
    throw InvalidArgument("latent dims must be >= 1");
  if (downsample < 1) throw InvalidArgument("latent downsample factor must be >= 1");
  if (values.size() != std::size_t(height) * width * channels)
    throw ShapeMismatch("latent value count does not match dims");
  for (float v : values)
    if (!std::isfinite(v)) throw InvalidArgument("latent values must be finite");
}

namespace {

// Sub-pixel slack so that poses which are algebraically the identity do not
// lose border pixels to floating-point round-off.
constexpr double kEdgeTolerance = 1e-3;

// Bilinear sample of one channel; returns false when (x, y) falls outside
// the valid sampling rectangle.
bool sample_bilinear(const LatentImage& img, double x, double y, std::uint32_t c, float& out) {
  const double xmax = double(img.width) - 1.0, ymax = double(img.height) - 1.0;
  if (x < -kEdgeTolerance || y < -kEdgeTolerance || x > xmax + kEdgeTolerance ||
      y > ymax + kEdgeTolerance)
    return false;
  x = std::clamp(x, 0.0, xmax);
  y = std::clamp(y, 0.0, ymax);
  const std::uint32_t x0 = std::uint32_t(x), y0 = std::uint32_t(y);
  const std::uint32_t x1 = std::min(x0 + 1, img.width - 1);
  const std::uint32_t y1 = std::min(y0 + 1, img.height - 1);
  const double fx = x - double(x0), fy = y - double(y0);
  const double v00 = img.at(x0, y0, c), v10 = img.at(x1, y0, c);
  const double v01 = img.at(x0, y1, c), v11 = img.at(x1, y1, c);
  out = float((1 - fy) * ((1 - fx) * v00 + fx * v10) + fy * ((1 - fx) * v01 + fx * v11));
  return true;
}

}  // namespace

WarpResult warp_latent(const LatentImage& z_c, const gsrender::DepthMap& depth,
                       const gsrender::Camera& cam_ref, const gsrender::Camera& cam_tgt) {
  z_c.validate();
  const std::uint32_t f = z_c.downsample;
  if (depth.width != z_c.width * f || depth.height != z_c.height * f)
    throw ResolutionMismatch("depth map is " + std::to_string(depth.width) + "x" +
                             std::to_string(depth.height) + ", expected " +
                             std::to_string(z_c.width * f) + "x" + std::to_string(z_c.height * f));

  WarpResult res;
  res.latent = z_c;
  res.latent.values.assign(z_c.values.size(), 0.0f);
  res.valid.assign(std::size_t(z_c.height) * z_c.width, 0);

  // Relative pose target-camera -> reference-camera, in double so an
  // identity pose reproduces pixel coordinates to round-off.
  const Eigen::Matrix3d r_rel =
      (cam_ref.rotation * cam_tgt.rotation.transpose()).cast<double>();
  const Eigen::Vector3d t_rel =
      cam_ref.translation.cast<double>() - r_rel * cam_tgt.translation.cast<double>();

  for (std::uint32_t y = 0; y < z_c.height; ++y)
    for (std::uint32_t x = 0; x < z_c.width; ++x) {
      // Average the target depth over the valid pixels of this latent cell.
      double dsum = 0.0;
      int dcount = 0;
      for (std::uint32_t by = y * f; by < (y + 1) * f; ++by)
        for (std::uint32_t bx = x * f; bx < (x + 1) * f; ++bx) {
          const float d = depth.at(bx, by);
          if (d > 0.0f) {
            dsum += d;
            ++dcount;
          }
        }
      if (dcount == 0) continue;  // zero-depth rule: zeros, invalid
      const double d = dsum / dcount;

      // Lift the latent pixel center at full resolution in the target view.
      const double u = (double(x) + 0.5) * double(f) - 0.5;
      const double v = (double(y) + 0.5) * double(f) - 0.5;
      const Eigen::Vector3d p_tgt(d * (u - cam_tgt.cx) / cam_tgt.fx,
                                  d * (v - cam_tgt.cy) / cam_tgt.fy, d);
      const Eigen::Vector3d p_ref = r_rel * p_tgt + t_rel;
      if (p_ref.z() <= 0.0) continue;  // behind the reference camera

      const double ur = cam_ref.fx * p_ref.x() / p_ref.z() + cam_ref.cx;
      const double vr = cam_ref.fy * p_ref.y() / p_ref.z() + cam_ref.cy;
      // Back to latent coordinates of the reference frame.
      const double xl = (ur + 0.5) / double(f) - 0.5;
      const double yl = (vr + 0.5) / double(f) - 0.5;

      bool ok = true;
      for (std::uint32_t c = 0; c < z_c.channels && ok; ++c) {
        float val;
        ok = sample_bilinear(z_c, xl, yl, c, val);
        if (ok) res.latent.values[res.latent.index(x, y, c)] = val;
      }
      if (!ok) {
        for (std::uint32_t c = 0; c < z_c.channels; ++c)
          res.latent.values[res.latent.index(x, y, c)] = 0.0f;
        continue;
      }
      res.valid[std::size_t(y) * z_c.width + x] = 1;
    }
  return res;
}

}  // namespace occscene::geomwarp
