// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cli.hpp"
#include "occscene/core/errors.hpp"
#include "occscene/evalkit/distribution.hpp"
#include "occscene/evalkit/segmentation.hpp"
#include "occscene/lidarsim/ply_io.hpp"
#include "occscene/voxgrid/codec.hpp"

namespace occscene::cli {
namespace {

struct MetricsOpts {
  CommonOpts common;
  std::string pred_path, gt_path;
  std::vector<std::string> set_a, set_b;
  std::uint32_t bins = 100;
  double range = 50.0;  // histograms cover [-range, range]^2
  double bandwidth = 0.0;  // 0 = median heuristic
  bool json = false;
  std::string out_path;
};

std::vector<evalkit::BevHistogram> histogram_set(const std::vector<std::string>& paths,
                                                 const MetricsOpts& o) {
  std::vector<evalkit::BevHistogram> hists;
  for (const auto& path : paths) {
    const auto pts = lidarsim::load_ply(path);
    std::vector<Eigen::Vector3f> xyz;
    xyz.reserve(pts.size());
    for (const auto& p : pts) xyz.emplace_back(p.x, p.y, p.z);
    hists.push_back(evalkit::bev_histogram(xyz, o.bins, o.bins, -o.range, o.range, -o.range,
                                           o.range));
  }
  return hists;
}

evalkit::BevHistogram aggregate(const std::vector<evalkit::BevHistogram>& hists) {
  evalkit::BevHistogram out = hists.front();
  for (std::size_t i = 1; i < hists.size(); ++i) {
    if (!out.same_bins(hists[i])) throw BinMismatch("aggregate: binnings differ");
    for (std::size_t b = 0; b < out.counts.size(); ++b) out.counts[b] += hists[i].counts[b];
    out.total += hists[i].total;
    out.discarded += hists[i].discarded;
  }
  return out;
}

void run(const MetricsOpts& o) {
  const auto start = std::chrono::steady_clock::now();
  nlohmann::ordered_json report;
  RunManifest manifest;
  manifest.command = "metrics";
  manifest.seed = o.common.seed;

  const bool grid_mode = !o.pred_path.empty() || !o.gt_path.empty();
  const bool cloud_mode = !o.set_a.empty() || !o.set_b.empty();
  if (!grid_mode && !cloud_mode)
    throw InvalidArgument("metrics needs --pred/--gt grids or --set-a/--set-b clouds");

  if (grid_mode) {
    if (o.pred_path.empty() || o.gt_path.empty())
      throw InvalidArgument("grid metrics need both --pred and --gt");
    const auto pred = voxgrid::load_svo(o.pred_path);
    const auto gt = voxgrid::load_svo(o.gt_path);
    const auto rep = evalkit::iou_miou(pred, gt);
    report["miou"] = rep.miou;
    report["iou"] = rep.binary_iou;
    for (std::size_t c = 0; c < rep.per_class.size(); ++c)
      if (!std::isnan(rep.per_class[c]))
        report["iou_class_" + std::to_string(c)] = rep.per_class[c];
    manifest.inputs.push_back(o.pred_path);
    manifest.inputs.push_back(o.gt_path);
  }

  if (cloud_mode) {
    if (o.set_a.empty() || o.set_b.empty())
      throw InvalidArgument("cloud metrics need both --set-a and --set-b");
    const auto hists_a = histogram_set(o.set_a, o);
    const auto hists_b = histogram_set(o.set_b, o);
    double bw = o.bandwidth;
    if (bw <= 0.0) {
      std::vector<evalkit::BevHistogram> all = hists_a;
      all.insert(all.end(), hists_b.begin(), hists_b.end());
      bw = evalkit::median_heuristic_bandwidth(all);
    }
    report["mmd"] = evalkit::mmd(hists_a, hists_b, bw);
    report["jsd"] = evalkit::jsd(aggregate(hists_a), aggregate(hists_b));
    report["bandwidth"] = bw;
    for (const auto& p : o.set_a) manifest.inputs.push_back(p);
    for (const auto& p : o.set_b) manifest.inputs.push_back(p);
    manifest.parameters["bins"] = o.bins;
    manifest.parameters["range"] = o.range;
  }

  std::ostringstream body;
  if (o.json) {
    body << report.dump(2) << "\n";
  } else {
    for (const auto& [key, value] : report.items()) body << key << "=" << value.dump() << "\n";
  }
  if (o.out_path.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) throw IoError("cannot write report: " + o.out_path);
    f << body.str();
    manifest.outputs.push_back(o.out_path);
    manifest.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_manifest(o.out_path + ".manifest.json", manifest);
  }
}

}  // namespace

void register_metrics(CLI::App& app) {
  auto opts = std::make_shared<MetricsOpts>();
  CLI::App* cmd = app.add_subcommand(
      "metrics", "IoU/mIoU between grids, MMD/JSD between point-cloud sets");
  cmd->add_option("--pred", opts->pred_path, "predicted SVO grid");
  cmd->add_option("--gt", opts->gt_path, "ground-truth SVO grid");
  cmd->add_option("--set-a", opts->set_a, "PLY files of set A");
  cmd->add_option("--set-b", opts->set_b, "PLY files of set B");
  cmd->add_option("--bins", opts->bins, "histogram bins per axis");
  cmd->add_option("--range", opts->range, "histogram half-range in meters");
  cmd->add_option("--bandwidth", opts->bandwidth, "MMD kernel bandwidth (0 = median heuristic)");
  cmd->add_flag("--json", opts->json, "emit a JSON report");
  cmd->add_option("--out", opts->out_path, "write the report to a file (default: stdout)");
  opts->common.attach(cmd);
  cmd->callback([opts] { run(*opts); });
}

}  // namespace occscene::cli
