// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "occscene/lidarsim/raycast.hpp"

namespace occscene::lidarsim {

struct RayPdf {
  std::vector<double> s;        // candidate depths along the ray, ascending
  std::vector<std::uint8_t> p;  // 1 where the candidate sits in an occupied voxel
};

/// M candidates uniformly spaced over the ray's overlap with the grid AABB
/// (clamped to max_range); p_i = 1 iff the candidate point falls inside an
/// occupied voxel. Throws NoOverlap when the ray misses the grid.
RayPdf presample_pdf(const voxgrid::SemanticOccupancyGrid& grid, const Ray& ray, std::uint32_t m,
                     double max_range);

/// Stratified inverse-CDF resampling of the binary PDF: each occupied
/// candidate is one atom of equal mass, stratum j uses u_j = (j + xi_j) / n
/// with xi drawn from the seed. Returned positions are the atom depths, so
/// every sample lies inside an occupied voxel and the sequence is
/// non-decreasing. Throws EmptySupport when all p are zero.
std::vector<double> resample(const std::vector<double>& s, const std::vector<std::uint8_t>& p,
                             std::uint32_t n, std::uint64_t seed);

}  // namespace occscene::lidarsim
