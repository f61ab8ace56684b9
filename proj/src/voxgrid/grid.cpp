// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#include "occscene/voxgrid/grid.hpp"

#include <cmath>
#include <string>

#include "occscene/core/errors.hpp"

namespace occscene::voxgrid {

void SemanticOccupancyGrid::validate() const {
  if (dims[0] < 1 || dims[1] < 1 || dims[2] < 1)
    throw InvalidArgument("grid dims must all be >= 1");
  if (!(voxel_size > 0.0f) || !std::isfinite(voxel_size))
    throw InvalidArgument("voxel_size must be positive");
  if (!origin.allFinite()) throw InvalidArgument("grid origin must be finite");
  if (labels.size() != voxel_count())
    throw TruncatedPayload("grid labels: expected " + std::to_string(voxel_count()) +
                           " entries, got " + std::to_string(labels.size()));
  for (std::size_t v = 0; v < labels.size(); ++v) {
    const std::uint8_t l = labels[v];
    if (l >= num_classes && l != kUnknownLabel)
      throw LabelOutOfRange("grid label " + std::to_string(int(l)) + " at voxel " +
                            std::to_string(v) + " >= num_classes " + std::to_string(num_classes));
  }
}

Eigen::Vector3f voxel_center(const SemanticOccupancyGrid& grid,
                             std::array<std::uint32_t, 3> index) {
  if (!grid.contains(index[0], index[1], index[2]))
    throw IndexOutOfBounds("voxel index (" + std::to_string(index[0]) + ", " +
                           std::to_string(index[1]) + ", " + std::to_string(index[2]) +
                           ") outside grid dims");
  return grid.origin + grid.voxel_size * Eigen::Vector3f(float(index[0]) + 0.5f,
                                                         float(index[1]) + 0.5f,
                                                         float(index[2]) + 0.5f);
}

void BevLayout::validate() const {
  if (dims[0] < 1 || dims[1] < 1) throw InvalidArgument("layout dims must be >= 1");
  if (!(cell_size > 0.0f) || !std::isfinite(cell_size))
    throw InvalidArgument("cell_size must be positive");
  if (codes.size() != cell_count())
    throw TruncatedPayload("layout codes: expected " + std::to_string(cell_count()) +
                           " entries, got " + std::to_string(codes.size()));
  for (std::size_t c = 0; c < codes.size(); ++c)
    if (codes[c] >= palette_size)
      throw CodeOutOfPalette("layout code " + std::to_string(int(codes[c])) + " at cell " +
                             std::to_string(c) + " >= palette size " +
                             std::to_string(palette_size));
}

BevLayout edit_layout(const BevLayout& layout, const std::vector<LayoutEdit>& edits) {
  for (const auto& e : edits) {
    const auto& r = e.region;
    if (r.i0 > r.i1 || r.j0 > r.j1 || r.i1 > layout.dims[0] || r.j1 > layout.dims[1])
      throw RegionOutOfBounds("edit region [" + std::to_string(r.i0) + ".." +
                              std::to_string(r.i1) + ") x [" + std::to_string(r.j0) + ".." +
                              std::to_string(r.j1) + ") outside layout dims");
    if (e.code >= layout.palette_size)
      throw CodeOutOfPalette("edit code " + std::to_string(int(e.code)) + " >= palette size " +
                             std::to_string(layout.palette_size));
  }
  BevLayout out = layout;
  for (const auto& e : edits)
    for (std::uint32_t i = e.region.i0; i < e.region.i1; ++i)
      for (std::uint32_t j = e.region.j0; j < e.region.j1; ++j)
        out.codes[out.index(i, j)] = e.code;
  return out;
}

}  // namespace occscene::voxgrid
