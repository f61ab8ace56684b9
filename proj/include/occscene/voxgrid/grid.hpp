// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <vector>

namespace occscene::voxgrid {

constexpr std::uint8_t kUnknownLabel = 255;  // sentinel, never a class code

/// Dense semantic occupancy volume. Frame is x-forward / y-left / z-up with
/// `origin` at the min corner. Labels are stored i (x) outermost, then j (y),
/// then k (z) innermost. Label 0 is free space; 255 marks unknown cells.
struct SemanticOccupancyGrid {
  std::array<std::uint32_t, 3> dims{1, 1, 1};  // voxel counts along x (H), y (W), z (D)
  float voxel_size = 1.0f;
  Eigen::Vector3f origin = Eigen::Vector3f::Zero();
  std::uint32_t num_classes = 2;
  std::vector<std::uint8_t> labels;

  std::size_t voxel_count() const {
    return std::size_t(dims[0]) * dims[1] * dims[2];
  }
  std::size_t index(std::uint32_t i, std::uint32_t j, std::uint32_t k) const {
    return (std::size_t(i) * dims[1] + j) * dims[2] + k;
  }
  std::uint8_t at(std::uint32_t i, std::uint32_t j, std::uint32_t k) const {
    return labels[index(i, j, k)];
  }
  bool contains(std::uint32_t i, std::uint32_t j, std::uint32_t k) const {
    return i < dims[0] && j < dims[1] && k < dims[2];
  }
  bool occupied(std::uint32_t i, std::uint32_t j, std::uint32_t k) const {
    const std::uint8_t l = at(i, j, k);
    return l != 0 && l != kUnknownLabel;
  }

  /// Throws when any invariant is violated (label range, positive voxel
  /// size, payload length).
  void validate() const;

  bool operator==(const SemanticOccupancyGrid&) const = default;
};

/// World-space center of voxel (i, j, k). Throws IndexOutOfBounds.
Eigen::Vector3f voxel_center(const SemanticOccupancyGrid& grid,
                             std::array<std::uint32_t, 3> index);

/// Top-down 2D class layout used as the generation condition. Code 0 is
/// empty; the palette defines the rest (roads, lane lines, footprints, ...).
struct BevLayout {
  std::array<std::uint32_t, 2> dims{1, 1};  // cells along x (H), y (W)
  float cell_size = 1.0f;
  Eigen::Vector2f origin = Eigen::Vector2f::Zero();
  std::uint32_t palette_size = 2;
  std::vector<std::uint8_t> codes;  // row-major, i outer / j inner

  std::size_t cell_count() const { return std::size_t(dims[0]) * dims[1]; }
  std::size_t index(std::uint32_t i, std::uint32_t j) const {
    return std::size_t(i) * dims[1] + j;
  }
  std::uint8_t at(std::uint32_t i, std::uint32_t j) const { return codes[index(i, j)]; }

  void validate() const;

  bool operator==(const BevLayout&) const = default;
};

/// Axis-aligned cell rectangle, inclusive lower bound, exclusive upper.
struct CellRegion {
  std::uint32_t i0 = 0, j0 = 0;
  std::uint32_t i1 = 0, j1 = 0;  // exclusive
};

struct LayoutEdit {
  CellRegion region;
  std::uint8_t code = 0;
};

/// Returns a copy of `layout` with the edits applied in list order; later
/// edits win on overlap. Throws RegionOutOfBounds / CodeOutOfPalette.
BevLayout edit_layout(const BevLayout& layout, const std::vector<LayoutEdit>& edits);

}  // namespace occscene::voxgrid
