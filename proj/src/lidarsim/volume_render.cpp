// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#include "occscene/lidarsim/volume_render.hpp"

#include <cmath>

#include "occscene/core/errors.hpp"

namespace occscene::lidarsim {

namespace {
inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }
}  // namespace

VolumeRenderResult volume_render_depth(const std::vector<double>& sdf,
                                       const std::vector<double>& s, double sharpness) {
  if (sdf.size() != s.size()) throw LengthMismatch("volume render: sdf and s lengths differ");
  if (sdf.size() < 2) throw InvalidArgument("volume render needs at least 2 samples");
  if (!(sharpness > 0.0)) throw InvalidArgument("sharpness must be > 0");

  const std::size_t n = sdf.size();
  std::vector<double> phi(n);
  for (std::size_t i = 0; i < n; ++i) phi[i] = sigmoid(sharpness * sdf[i]);

  VolumeRenderResult res;
  res.weights.assign(n, 0.0);
  double trans = 1.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double beta = 0.0;
    if (phi[i] >= 1e-12) beta = std::max((phi[i] - phi[i + 1]) / phi[i], 0.0);
    const double w = trans * beta;
    res.weights[i] = w;
    res.depth += w * s[i];
    trans *= 1.0 - beta;
  }
  // beta_n = 0, so the last weight stays 0.
  return res;
}

Eigen::VectorXd ray_feature(const std::vector<double>& weights,
                            const std::vector<Eigen::VectorXd>& features) {
  if (weights.size() != features.size())
    throw LengthMismatch("ray feature: weights and features lengths differ");
  if (features.empty()) return Eigen::VectorXd();
  Eigen::VectorXd v = Eigen::VectorXd::Zero(features.front().size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (features[i].size() != v.size())
      throw LengthMismatch("ray feature: inconsistent feature dimension");
    v += weights[i] * features[i];
  }
  return v;
}

}  // namespace occscene::lidarsim
