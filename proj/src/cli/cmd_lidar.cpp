// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#include <chrono>
#include <iostream>

#include "cli.hpp"
#include "occscene/core/errors.hpp"
#include "occscene/lidarsim/ply_io.hpp"
#include "occscene/lidarsim/simulate.hpp"
#include "occscene/voxgrid/codec.hpp"

namespace occscene::cli {
namespace {

struct LidarOpts {
  CommonOpts common;
  std::string grid_path, rig_path, out_path, head_path;
  double sharpness = 100.0;
  std::uint32_t presamples = 512;
  std::uint32_t resamples = 32;
  std::string drop_mode = "threshold";
  std::string sampling = "prior";
  bool keep_dropped = false;
  bool stats = false;
};

void run(const LidarOpts& o) {
  const auto start = std::chrono::steady_clock::now();
  const auto grid = voxgrid::load_svo(o.grid_path);
  const auto rig = lidarsim::load_rig(o.rig_path);

  lidarsim::LidarHead head =
      o.head_path.empty() ? lidarsim::LidarHead::analytic_default() : lidarsim::load_head(o.head_path);
  head.sharpness = o.sharpness;

  lidarsim::SimulateParams params;
  params.presamples = o.presamples;
  params.resamples = o.resamples;
  params.seed = o.common.seed;
  params.threads = o.common.resolved_threads();
  if (o.drop_mode == "threshold")
    params.drop_mode = lidarsim::DropMode::kThreshold;
  else if (o.drop_mode == "bernoulli")
    params.drop_mode = lidarsim::DropMode::kBernoulli;
  else if (o.drop_mode == "off")
    params.drop_mode = lidarsim::DropMode::kOff;
  else
    throw InvalidArgument("--drop-mode must be threshold, bernoulli or off");
  if (o.sampling == "prior")
    params.sampling = lidarsim::SamplingMode::kPriorGuided;
  else if (o.sampling == "uniform")
    params.sampling = lidarsim::SamplingMode::kUniform;
  else
    throw InvalidArgument("--sampling must be prior or uniform");

  const lidarsim::AnalyticSdfProvider provider(grid);
  const auto cloud = lidarsim::simulate(grid, rig, provider, head, params);
  lidarsim::save_ply(o.out_path, cloud, o.keep_dropped);

  if (o.stats)
    std::cout << "rays=" << cloud.stats.rays << " hits=" << cloud.stats.hits
              << " occupancy_tests=" << cloud.stats.occupancy_tests
              << " feature_evals=" << cloud.stats.feature_evals << "\n";

  RunManifest manifest;
  manifest.command = "lidar";
  manifest.seed = o.common.seed;
  manifest.inputs = {o.grid_path, o.rig_path};
  if (!o.head_path.empty()) manifest.inputs.push_back(o.head_path);
  manifest.outputs = {o.out_path};
  manifest.parameters["presamples"] = o.presamples;
  manifest.parameters["resamples"] = o.resamples;
  manifest.parameters["sharpness"] = o.sharpness;
  manifest.parameters["drop_mode"] = o.drop_mode;
  manifest.parameters["sampling"] = o.sampling;
  manifest.parameters["keep_dropped"] = o.keep_dropped;
  manifest.parameters["threads"] = params.threads;
  manifest.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_manifest(o.out_path + ".manifest.json", manifest);
}

}  // namespace

void register_lidar(CLI::App& app) {
  auto opts = std::make_shared<LidarOpts>();
  CLI::App* cmd = app.add_subcommand("lidar", "synthesize a point cloud from an occupancy grid");
  cmd->add_option("--grid", opts->grid_path, "input SVO grid")->required();
  cmd->add_option("--rig", opts->rig_path, "sensor rig config")->required();
  cmd->add_option("--out", opts->out_path, "output PLY")->required();
  cmd->add_option("--head", opts->head_path, "LHED head weights (default: analytic identity)");
  cmd->add_option("--sharpness", opts->sharpness, "sigmoid sharpness of the SDF weights");
  cmd->add_option("--presamples", opts->presamples, "uniform candidates per ray (M)");
  cmd->add_option("--resamples", opts->resamples, "rendered samples per ray (n)");
  cmd->add_option("--drop-mode", opts->drop_mode, "threshold | bernoulli | off");
  cmd->add_option("--sampling", opts->sampling, "prior | uniform (no-PDF baseline)");
  cmd->add_flag("--keep-dropped", opts->keep_dropped, "export dropped points, flagged");
  cmd->add_flag("--stats", opts->stats, "print sampling statistics");
  opts->common.attach(cmd);
  cmd->callback([opts] { run(*opts); });
}

namespace {

struct OracleOpts {
  CommonOpts common;
  std::string grid_path, rig_path, out_path;
};

void run_oracle(const OracleOpts& o) {
  const auto start = std::chrono::steady_clock::now();
  const auto grid = voxgrid::load_svo(o.grid_path);
  const auto rig = lidarsim::load_rig(o.rig_path);

  lidarsim::LidarPointCloud cloud;
  const auto rays = lidarsim::make_rig(rig);
  cloud.returns.reserve(rays.size());
  for (const auto& ray : rays) {
    lidarsim::LidarReturn ret;
    ret.row = ray.row;
    ret.col = ray.col;
    const auto hit = lidarsim::dda_raycast(grid, ray, rig.max_range);
    if (hit) {
      ret.miss = false;
      ret.depth = hit->depth;
      ret.point = ray.origin + hit->depth * ray.direction;
    }
    cloud.returns.push_back(ret);
  }
  lidarsim::save_ply(o.out_path, cloud);

  RunManifest manifest;
  manifest.command = "raycast-oracle";
  manifest.seed = o.common.seed;
  manifest.inputs = {o.grid_path, o.rig_path};
  manifest.outputs = {o.out_path};
  manifest.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_manifest(o.out_path + ".manifest.json", manifest);
}

}  // namespace

void register_raycast_oracle(CLI::App& app) {
  auto opts = std::make_shared<OracleOpts>();
  CLI::App* cmd =
      app.add_subcommand("raycast-oracle", "hard DDA ray casting of a grid (depth-only cloud)");
  cmd->add_option("--grid", opts->grid_path, "input SVO grid")->required();
  cmd->add_option("--rig", opts->rig_path, "sensor rig config")->required();
  cmd->add_option("--out", opts->out_path, "output PLY")->required();
  opts->common.attach(cmd);
  cmd->callback([opts] { run_oracle(*opts); });
}

}  // namespace occscene::cli
