// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#include "occscene/lidarsim/simulate.hpp"

#include <atomic>
#include <cmath>

#include "occscene/core/errors.hpp"
#include "occscene/core/parallel.hpp"
#include "occscene/core/rng.hpp"

namespace occscene::lidarsim {
namespace {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

inline double head_scalar(const Mlp& mlp, const Eigen::VectorXd& v) {
  if (mlp.identity()) return v.size() > 0 ? v[0] : 0.0;
  return mlp.forward(v)[0];
}

}  // namespace

LidarPointCloud simulate(const voxgrid::SemanticOccupancyGrid& grid, const SensorRig& rig,
                         const FeatureProvider& provider, const LidarHead& head,
                         const SimulateParams& params) {
  grid.validate();
  rig.validate();
  head.validate(provider.feature_dim());
  if (params.presamples < 2) throw InvalidArgument("presamples must be >= 2");
  if (params.resamples < 2) throw InvalidArgument("resamples must be >= 2");

  const std::vector<Ray> rays = make_rig(rig);
  LidarPointCloud cloud;
  cloud.returns.resize(rays.size());
  cloud.stats.rays = rays.size();

  std::atomic<std::uint64_t> occ_tests{0}, feat_evals{0}, hits{0};

  parallel_for(
      0, std::int64_t(rays.size()),
      [&](std::int64_t ri) {
        const Ray& ray = rays[std::size_t(ri)];
        LidarReturn& ret = cloud.returns[std::size_t(ri)];
        ret.row = ray.row;
        ret.col = ray.col;
        ret.miss = true;

        std::vector<double> samples;
        try {
          if (params.sampling == SamplingMode::kPriorGuided) {
            const RayPdf pdf = presample_pdf(grid, ray, params.presamples, rig.max_range);
            occ_tests += pdf.s.size();
            const std::uint64_t ray_seed =
                hash_combine(hash_combine(params.seed, ray.row), ray.col);
            samples = resample(pdf.s, pdf.p, params.resamples, ray_seed);
          } else {
            // Uniform baseline: every candidate position is rendered, no
            // occupancy prior consulted.
            const auto overlap = ray_grid_overlap(grid, ray);
            if (!overlap) throw NoOverlap("ray misses the grid AABB");
            const double t_near = overlap->first;
            const double t_far = std::min(overlap->second, rig.max_range);
            if (t_far <= t_near) throw NoOverlap("overlap beyond max_range");
            samples.resize(params.presamples);
            const double dt = (t_far - t_near) / double(params.presamples - 1);
            for (std::uint32_t i = 0; i < params.presamples; ++i)
              samples[i] = t_near + dt * double(i);
          }
        } catch (const NoOverlap&) {
          return;
        } catch (const EmptySupport&) {
          return;
        }

        std::vector<Eigen::VectorXd> features(samples.size());
        std::vector<double> sdf(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i) {
          features[i] = provider.sample(ray.origin + samples[i] * ray.direction);
          sdf[i] = head_scalar(head.sdf_mlp, features[i]);
        }
        feat_evals += samples.size();

        const VolumeRenderResult vr = volume_render_depth(sdf, samples, head.sharpness);
        double wsum = 0.0;
        for (double w : vr.weights) wsum += w;
        if (wsum <= 1e-12) return;  // no surface transition: report a miss

        ret.miss = false;
        ret.depth = vr.depth;
        ret.point = ray.origin + vr.depth * ray.direction;
        hits += 1;

        const Eigen::VectorXd v_r = ray_feature(vr.weights, features);
        ret.intensity = float(sigmoid(head_scalar(head.intensity_mlp, v_r)));
        ret.drop_prob = float(sigmoid(head_scalar(head.drop_mlp, v_r)));
        switch (params.drop_mode) {
          case DropMode::kThreshold:
            ret.dropped = ret.drop_prob > 0.5f;
            break;
          case DropMode::kBernoulli: {
            const std::uint64_t ray_seed =
                hash_combine(hash_combine(params.seed ^ 0x5d7017u, ray.row), ray.col);
            ret.dropped = uniform01(ray_seed, 0) < double(ret.drop_prob);
            break;
          }
          case DropMode::kOff:
            ret.dropped = false;
            break;
        }
      },
      params.threads);

  cloud.stats.occupancy_tests = occ_tests;
  cloud.stats.feature_evals = feat_evals;
  cloud.stats.hits = hits;
  return cloud;
}

}  // namespace occscene::lidarsim
