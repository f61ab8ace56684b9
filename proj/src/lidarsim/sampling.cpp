// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#include "occscene/lidarsim/sampling.hpp"

#include <cmath>

#include "occscene/core/errors.hpp"
#include "occscene/core/rng.hpp"

namespace occscene::lidarsim {

RayPdf presample_pdf(const voxgrid::SemanticOccupancyGrid& grid, const Ray& ray, std::uint32_t m,
                     double max_range) {
  if (m < 2) throw InvalidArgument("presample count must be >= 2");
  const auto overlap = ray_grid_overlap(grid, ray);
  if (!overlap) throw NoOverlap("ray misses the grid AABB");
  const double t_near = overlap->first;
  const double t_far = std::min(overlap->second, max_range);
  if (t_far <= t_near) throw NoOverlap("ray-grid overlap is beyond max_range");

  RayPdf pdf;
  pdf.s.resize(m);
  pdf.p.resize(m);
  const double dt = (t_far - t_near) / double(m - 1);
  const double inv_vs = 1.0 / grid.voxel_size;
  for (std::uint32_t i = 0; i < m; ++i) {
    const double t = t_near + dt * double(i);
    pdf.s[i] = t;
    const Eigen::Vector3d pt = ray.origin + t * ray.direction;
    bool occ = false;
    std::int64_t vi[3];
    bool inside = true;
    for (int a = 0; a < 3; ++a) {
      const double c = (pt[a] - grid.origin[a]) * inv_vs;
      // Samples on the outer faces of the AABB belong to the touching voxel.
      if (c < 0.0 || c > double(grid.dims[a])) {
        inside = false;
        break;
      }
      vi[a] = std::min<std::int64_t>(std::int64_t(std::floor(c)),
                                     std::int64_t(grid.dims[a]) - 1);
    }
    if (inside) {
      const std::uint8_t l =
          grid.at(std::uint32_t(vi[0]), std::uint32_t(vi[1]), std::uint32_t(vi[2]));
      occ = l != 0 && l != voxgrid::kUnknownLabel;
    }
    pdf.p[i] = occ ? 1 : 0;
  }
  return pdf;
}

std::vector<double> resample(const std::vector<double>& s, const std::vector<std::uint8_t>& p,
                             std::uint32_t n, std::uint64_t seed) {
  if (s.size() != p.size()) throw LengthMismatch("resample: s and p lengths differ");
  std::vector<std::uint32_t> atoms;
  for (std::uint32_t i = 0; i < p.size(); ++i)
    if (p[i]) atoms.push_back(i);
  if (atoms.empty()) throw EmptySupport("resample: all pdf values are zero");

  // Stratified inverse CDF over equal-mass atoms: u_j picks atom
  // floor(u_j * K). Strata ascend, so positions come out non-decreasing.
  std::vector<double> out(n);
  const double k = double(atoms.size());
  for (std::uint32_t j = 0; j < n; ++j) {
    const double xi = uniform01(seed, j);
    const double u = (double(j) + xi) / double(n);
    auto a = std::uint32_t(u * k);
    if (a >= atoms.size()) a = std::uint32_t(atoms.size()) - 1;
    out[j] = s[atoms[a]];
  }
  return out;
}

}  // namespace occscene::lidarsim
