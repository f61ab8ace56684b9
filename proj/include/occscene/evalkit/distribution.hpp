// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

namespace occscene::evalkit {

/// 2D birds-eye histogram of point x/y positions. Bin edges follow the
/// right/top-exclusive convention except for the final bin, which includes
/// its upper edge.
struct BevHistogram {
  std::uint32_t bins_x = 0, bins_y = 0;
  double x_min = 0, x_max = 0, y_min = 0, y_max = 0;
  std::vector<std::uint64_t> counts;  // [ix * bins_y + iy]
  std::uint64_t total = 0;            // counted points (discarded excluded)
  std::uint64_t discarded = 0;

  double mass(std::uint32_t ix, std::uint32_t iy) const {
    return total == 0 ? 0.0 : double(counts[std::size_t(ix) * bins_y + iy]) / double(total);
  }
  double bin_center_x(std::uint32_t ix) const {
    return x_min + (double(ix) + 0.5) * (x_max - x_min) / bins_x;
  }
  double bin_center_y(std::uint32_t iy) const {
    return y_min + (double(iy) + 0.5) * (y_max - y_min) / bins_y;
  }
  bool same_bins(const BevHistogram& o) const {
    return bins_x == o.bins_x && bins_y == o.bins_y && x_min == o.x_min && x_max == o.x_max &&
           y_min == o.y_min && y_max == o.y_max;
  }
};

BevHistogram bev_histogram(const std::vector<Eigen::Vector3f>& points, std::uint32_t bins_x,
                           std::uint32_t bins_y, double x_min, double x_max, double y_min,
                           double y_max);

/// Squared maximum mean discrepancy between two sets of histograms, clamped
/// at zero. Each histogram is treated as a discrete distribution over its
/// bin centers and compared through the Gaussian mean-map kernel
///   k(P, Q) = sum_uv P_u Q_v exp(-|c_u - c_v|^2 / (2 sigma^2)),
/// so `bandwidth` is in meters. Within-set terms use the unbiased estimator
/// when a set has at least two histograms and the self inner product for
/// singletons. Throws BinMismatch on incompatible binnings.
double mmd(const std::vector<BevHistogram>& set_a, const std::vector<BevHistogram>& set_b,
           double bandwidth);

/// Median pairwise distance between histogram centroids, floored at one bin
/// diagonal; the default bandwidth when none is given.
double median_heuristic_bandwidth(const std::vector<BevHistogram>& all);

/// Jensen-Shannon divergence between two normalized histograms, natural
/// log, in [0, ln 2]. Throws BinMismatch / NotNormalized.
double jsd(const BevHistogram& p, const BevHistogram& q);

}  // namespace occscene::evalkit
