// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#include "occscene/lidarsim/features.hpp"

#include <cmath>
#include <limits>

#include "occscene/core/errors.hpp"

namespace occscene::lidarsim {
namespace {

// Finite stand-in for "no seed anywhere": dominates every reachable squared
// distance without the NaN pitfalls of real infinities.
constexpr double kFar2 = 1e12;

// 1D squared distance transform over a sampled function (lower envelope of
// parabolas), Felzenszwalb-Huttenlocher.
void edt_1d(const std::vector<double>& f, std::vector<double>& d, std::vector<int>& v,
            std::vector<double>& z, int n) {
  const double inf = std::numeric_limits<double>::infinity();
  int k = 0;
  v[0] = 0;
  z[0] = -inf;
  z[1] = inf;
  for (int q = 1; q < n; ++q) {
    double s = ((f[q] + double(q) * q) - (f[v[k]] + double(v[k]) * v[k])) /
               (2.0 * q - 2.0 * v[k]);
    while (s <= z[k]) {
      --k;
      s = ((f[q] + double(q) * q) - (f[v[k]] + double(v[k]) * v[k])) / (2.0 * q - 2.0 * v[k]);
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = inf;
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < double(q)) ++k;
    const int p = v[k];
    d[q] = (double(q) - p) * (double(q) - p) + f[p];
  }
}

// Exact squared Euclidean distance (in voxel units) to the nearest seed
// voxel center, computed separably along the three axes.
std::vector<double> edt_3d(const std::array<std::uint32_t, 3>& dims,
                           const std::vector<std::uint8_t>& seed) {
  const int nx = int(dims[0]), ny = int(dims[1]), nz = int(dims[2]);
  std::vector<double> dist(seed.size());
  for (std::size_t i = 0; i < seed.size(); ++i) dist[i] = seed[i] ? 0.0 : kFar2;

  const int nmax = std::max({nx, ny, nz});
  std::vector<double> f(nmax), d(nmax), z(nmax + 1);
  std::vector<int> v(nmax);
  auto idx = [&](int i, int j, int k) { return (std::size_t(i) * ny + j) * nz + k; };

  // Along z.
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      for (int k = 0; k < nz; ++k) f[k] = dist[idx(i, j, k)];
      edt_1d(f, d, v, z, nz);
      for (int k = 0; k < nz; ++k) dist[idx(i, j, k)] = d[k];
    }
  // Along y.
  for (int i = 0; i < nx; ++i)
    for (int k = 0; k < nz; ++k) {
      for (int j = 0; j < ny; ++j) f[j] = dist[idx(i, j, k)];
      edt_1d(f, d, v, z, ny);
      for (int j = 0; j < ny; ++j) dist[idx(i, j, k)] = d[j];
    }
  // Along x.
  for (int j = 0; j < ny; ++j)
    for (int k = 0; k < nz; ++k) {
      for (int i = 0; i < nx; ++i) f[i] = dist[idx(i, j, k)];
      edt_1d(f, d, v, z, nx);
      for (int i = 0; i < nx; ++i) dist[idx(i, j, k)] = d[i];
    }
  return dist;
}

}  // namespace

AnalyticSdfProvider::AnalyticSdfProvider(const voxgrid::SemanticOccupancyGrid& grid)
    : dims_(grid.dims), voxel_size_(grid.voxel_size), origin_(grid.origin) {
  const std::size_t n = grid.voxel_count();
  occupied_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint8_t l = grid.labels[i];
    occupied_[i] = (l != 0 && l != voxgrid::kUnknownLabel) ? 1 : 0;
  }
  std::vector<std::uint8_t> free(n);
  for (std::size_t i = 0; i < n; ++i) free[i] = occupied_[i] ? 0 : 1;

  const std::vector<double> d2_occ = edt_3d(dims_, occupied_);
  const std::vector<double> d2_free = edt_3d(dims_, free);
  const double unreachable = kFar2 / 2;

  far_value_ = double(Eigen::Vector3f(float(dims_[0]), float(dims_[1]), float(dims_[2])).norm()) *
               voxel_size_;

  dist_occ_.resize(n);
  dist_free_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    dist_occ_[i] = float(d2_occ[i] > unreachable ? far_value_ / voxel_size_
                                                 : std::sqrt(d2_occ[i]));
    dist_free_[i] = float(d2_free[i] > unreachable ? far_value_ / voxel_size_
                                                   : std::sqrt(d2_free[i]));
  }
}

bool AnalyticSdfProvider::voxel_occupied(std::int64_t i, std::int64_t j, std::int64_t k) const {
  if (i < 0 || j < 0 || k < 0 || i >= std::int64_t(dims_[0]) || j >= std::int64_t(dims_[1]) ||
      k >= std::int64_t(dims_[2]))
    return false;  // outside the grid counts as free space
  return occupied_[(std::size_t(i) * dims_[1] + j) * dims_[2] + k] != 0;
}

double AnalyticSdfProvider::sdf(const Eigen::Vector3d& point) const {
  double c[3];
  for (int a = 0; a < 3; ++a) {
    c[a] = (point[a] - origin_[a]) / voxel_size_;
    if (c[a] < -0.5 || c[a] > double(dims_[a]) + 0.5) return far_value_;
  }
  std::int64_t v[3];
  for (int a = 0; a < 3; ++a)
    v[a] = std::clamp<std::int64_t>(std::int64_t(std::floor(c[a])), 0,
                                    std::int64_t(dims_[a]) - 1);
  const std::size_t flat = (std::size_t(v[0]) * dims_[1] + v[1]) * dims_[2] + v[2];

  if (occupied_[flat]) {
    // Inside occupied matter: exact distance to the nearest face that
    // borders free space (or the grid boundary). Fully enclosed voxels fall
    // back to the center-to-center distance transform.
    double best = std::numeric_limits<double>::infinity();
    for (int a = 0; a < 3; ++a) {
      const double frac = c[a] - double(v[a]);  // in [0, 1] across the voxel
      std::int64_t lo[3] = {v[0], v[1], v[2]};
      std::int64_t hi[3] = {v[0], v[1], v[2]};
      lo[a] -= 1;
      hi[a] += 1;
      if (!voxel_occupied(lo[0], lo[1], lo[2])) best = std::min(best, frac);
      if (!voxel_occupied(hi[0], hi[1], hi[2])) best = std::min(best, 1.0 - frac);
    }
    if (!std::isfinite(best)) best = std::max(double(dist_free_[flat]) - 0.5, 0.5);
    return -best * voxel_size_;
  }

  // Free space: exact point-to-box distance against occupied voxels in a
  // local window when the surface is near; center-distance far field
  // otherwise.
  const double center_dist = dist_occ_[flat];  // voxel units
  constexpr std::int64_t kWindow = 2;
  if (center_dist > double(kWindow) + 1.0)
    return std::max(center_dist - 0.5, 0.5) * voxel_size_;

  double best2 = std::numeric_limits<double>::infinity();
  for (std::int64_t di = -kWindow; di <= kWindow; ++di)
    for (std::int64_t dj = -kWindow; dj <= kWindow; ++dj)
      for (std::int64_t dk = -kWindow; dk <= kWindow; ++dk) {
        const std::int64_t w[3] = {v[0] + di, v[1] + dj, v[2] + dk};
        if (!voxel_occupied(w[0], w[1], w[2])) continue;
        double d2 = 0.0;
        for (int a = 0; a < 3; ++a) {
          const double lo = double(w[a]), hi = double(w[a]) + 1.0;
          const double gap = c[a] < lo ? lo - c[a] : (c[a] > hi ? c[a] - hi : 0.0);
          d2 += gap * gap;
        }
        best2 = std::min(best2, d2);
      }
  if (!std::isfinite(best2)) return std::max(center_dist - 0.5, 0.5) * voxel_size_;
  return std::sqrt(best2) * voxel_size_;
}

Eigen::VectorXd AnalyticSdfProvider::sample(const Eigen::Vector3d& point) const {
  Eigen::VectorXd v(1);
  v[0] = sdf(point);
  return v;
}

LoadedFeatureProvider::LoadedFeatureProvider(std::array<std::uint32_t, 3> dims, float voxel_size,
                                             const Eigen::Vector3f& origin,
                                             std::uint32_t feature_dim, std::vector<float> data,
                                             Eigen::VectorXd far_value)
    : dims_(dims),
      voxel_size_(voxel_size),
      origin_(origin),
      dim_(feature_dim),
      data_(std::move(data)),
      far_value_(std::move(far_value)) {
  if (dim_ < 1) throw InvalidArgument("feature_dim must be >= 1");
  if (far_value_.size() != dim_)
    throw DimMismatch("far-field value dimension does not match feature_dim");
  const std::size_t expect = std::size_t(dims_[0]) * dims_[1] * dims_[2] * dim_;
  if (data_.size() != expect)
    throw DimMismatch("feature volume size does not match dims * feature_dim");
}

Eigen::VectorXd LoadedFeatureProvider::sample(const Eigen::Vector3d& point) const {
  for (int a = 0; a < 3; ++a) {
    const double lo = origin_[a];
    const double hi = origin_[a] + double(dims_[a]) * voxel_size_;
    if (point[a] < lo || point[a] > hi) return far_value_;
  }
  double c[3];
  for (int a = 0; a < 3; ++a)
    c[a] = (point[a] - origin_[a]) / voxel_size_ - 0.5;
  const auto at = [&](std::int64_t i, std::int64_t j, std::int64_t k) {
    i = std::clamp<std::int64_t>(i, 0, std::int64_t(dims_[0]) - 1);
    j = std::clamp<std::int64_t>(j, 0, std::int64_t(dims_[1]) - 1);
    k = std::clamp<std::int64_t>(k, 0, std::int64_t(dims_[2]) - 1);
    return data_.data() + ((std::size_t(i) * dims_[1] + j) * dims_[2] + k) * dim_;
  };
  const auto i0 = std::int64_t(std::floor(c[0]));
  const auto j0 = std::int64_t(std::floor(c[1]));
  const auto k0 = std::int64_t(std::floor(c[2]));
  const double fx = c[0] - double(i0), fy = c[1] - double(j0), fz = c[2] - double(k0);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim_);
  for (int di = 0; di < 2; ++di)
    for (int dj = 0; dj < 2; ++dj)
      for (int dk = 0; dk < 2; ++dk) {
        const double w = (di ? fx : 1.0 - fx) * (dj ? fy : 1.0 - fy) * (dk ? fz : 1.0 - fz);
        if (w == 0.0) continue;
        const float* p = at(i0 + di, j0 + dj, k0 + dk);
        for (std::uint32_t cdim = 0; cdim < dim_; ++cdim) out[cdim] += w * p[cdim];
      }
  return out;
}

}  // namespace occscene::lidarsim
