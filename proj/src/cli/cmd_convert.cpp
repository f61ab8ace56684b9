// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#include <chrono>
#include <cmath>

#include "cli.hpp"
#include "occscene/core/errors.hpp"
#include "occscene/lidarsim/ply_io.hpp"
#include "occscene/voxgrid/codec.hpp"

namespace occscene::cli {
namespace {

struct ConvertOpts {
  CommonOpts common;
  std::string in, out;
  std::vector<std::uint32_t> dims;
  float voxel_size = 1.0f;
  std::vector<float> origin{0.0f, 0.0f, 0.0f};
  std::uint32_t num_classes = 17;
};

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void run(const ConvertOpts& o) {
  const auto start = std::chrono::steady_clock::now();
  RunManifest manifest;
  manifest.command = "convert";
  manifest.seed = o.common.seed;
  manifest.inputs = {o.in};
  manifest.outputs = {o.out};

  if (ends_with(o.in, ".svo") && ends_with(o.out, ".ply")) {
    const auto grid = voxgrid::load_svo(o.in);
    std::vector<lidarsim::PlyPoint> pts;
    for (std::uint32_t i = 0; i < grid.dims[0]; ++i)
      for (std::uint32_t j = 0; j < grid.dims[1]; ++j)
        for (std::uint32_t k = 0; k < grid.dims[2]; ++k) {
          if (!grid.occupied(i, j, k)) continue;
          const Eigen::Vector3f c = voxgrid::voxel_center(grid, {i, j, k});
          lidarsim::PlyPoint p;
          p.x = c.x();
          p.y = c.y();
          p.z = c.z();
          p.label = grid.at(i, j, k);
          pts.push_back(p);
        }
    lidarsim::save_voxel_ply(o.out, pts);
    manifest.parameters["direction"] = "svo_to_ply";
  } else if (ends_with(o.in, ".ply") && ends_with(o.out, ".svo")) {
    if (o.dims.size() != 3)
      throw InvalidArgument("convert to SVO needs --dims H W D");
    voxgrid::SemanticOccupancyGrid grid;
    grid.dims = {o.dims[0], o.dims[1], o.dims[2]};
    grid.voxel_size = o.voxel_size;
    grid.origin = Eigen::Vector3f(o.origin[0], o.origin[1], o.origin[2]);
    grid.num_classes = o.num_classes;
    grid.labels.assign(grid.voxel_count(), 0);
    for (const auto& p : lidarsim::load_ply(o.in)) {
      const float c[3] = {p.x, p.y, p.z};
      std::int64_t idx[3];
      bool inside = true;
      for (int a = 0; a < 3; ++a) {
        idx[a] = std::int64_t(std::floor((c[a] - grid.origin[a]) / grid.voxel_size));
        if (idx[a] < 0 || idx[a] >= std::int64_t(grid.dims[a])) {
          inside = false;
          break;
        }
      }
      if (!inside) continue;
      std::uint8_t label = p.label;
      if (label == 0) label = 1;  // occupied by definition of the point
      if (label >= grid.num_classes && label != voxgrid::kUnknownLabel)
        throw LabelOutOfRange(o.in + ": point label " + std::to_string(int(label)) +
                              " >= num_classes " + std::to_string(grid.num_classes));
      grid.labels[grid.index(std::uint32_t(idx[0]), std::uint32_t(idx[1]),
                             std::uint32_t(idx[2]))] = label;
    }
    voxgrid::save_svo(o.out, grid);
    manifest.parameters["direction"] = "ply_to_svo";
    manifest.parameters["dims"] = o.dims;
    manifest.parameters["voxel_size"] = o.voxel_size;
    manifest.parameters["num_classes"] = o.num_classes;
  } else {
    throw InvalidArgument("convert expects .svo->.ply or .ply->.svo (got " + o.in + " -> " +
                          o.out + ")");
  }

  manifest.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_manifest(o.out + ".manifest.json", manifest);
}

}  // namespace

void register_convert(CLI::App& app) {
  auto opts = std::make_shared<ConvertOpts>();
  CLI::App* cmd = app.add_subcommand("convert", "convert between SVO grids and voxel-center PLY");
  cmd->add_option("--in", opts->in, "input file (.svo or .ply)")->required();
  cmd->add_option("--out", opts->out, "output file (.ply or .svo)")->required();
  cmd->add_option("--dims", opts->dims, "grid dims H W D (ply->svo)")->expected(3);
  cmd->add_option("--voxel-size", opts->voxel_size, "voxel size in meters (ply->svo)");
  cmd->add_option("--origin", opts->origin, "grid origin (ply->svo)")->expected(3);
  cmd->add_option("--num-classes", opts->num_classes, "class count (ply->svo)");
  opts->common.attach(cmd);
  cmd->callback([opts] { run(*opts); });
}

}  // namespace occscene::cli
