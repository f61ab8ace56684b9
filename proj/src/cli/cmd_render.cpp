// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#include <chrono>
#include <filesystem>

#include "cli.hpp"
#include "occscene/core/errors.hpp"
#include "occscene/gsrender/image_io.hpp"
#include "occscene/gsrender/primitives.hpp"
#include "occscene/gsrender/rasterize.hpp"
#include "occscene/voxgrid/codec.hpp"

namespace occscene::cli {
namespace {

struct RenderOpts {
  CommonOpts common;
  std::string grid_path, cams_path, out_dir;
  std::string layout_path;
  std::vector<std::string> line_map;  // "code:class" pairs
  float opacity = 0.99f;
  float scale_factor = 0.5f;
  bool normalize_depth = false;
};

void run(const RenderOpts& o) {
  const auto start = std::chrono::steady_clock::now();
  voxgrid::SemanticOccupancyGrid grid = voxgrid::load_svo(o.grid_path);
  const auto cams = gsrender::load_camera_rig(o.cams_path);
  if (cams.empty()) throw InvalidArgument(o.cams_path + ": no cameras defined");

  RunManifest manifest;
  manifest.command = "render";
  manifest.seed = o.common.seed;
  manifest.inputs = {o.grid_path, o.cams_path};
  manifest.parameters["opacity"] = o.opacity;
  manifest.parameters["scale_factor"] = o.scale_factor;
  manifest.parameters["normalize_depth"] = o.normalize_depth;
  manifest.parameters["threads"] = o.common.resolved_threads();

  if (!o.layout_path.empty()) {
    const auto layout = voxgrid::load_bvl(o.layout_path);
    std::vector<std::pair<std::uint8_t, std::uint8_t>> remap;
    for (const auto& entry : o.line_map) {
      const auto colon = entry.find(':');
      if (colon == std::string::npos)
        throw InvalidArgument("--line-map entries must look like code:class, got " + entry);
      remap.emplace_back(std::uint8_t(std::stoul(entry.substr(0, colon))),
                         std::uint8_t(std::stoul(entry.substr(colon + 1))));
    }
    grid = gsrender::overlay_layout_lines(grid, layout, remap);
    manifest.inputs.push_back(o.layout_path);
    manifest.parameters["line_map"] = o.line_map;
  }

  const auto prims =
      gsrender::voxels_to_gaussians(grid, {o.opacity, o.scale_factor});
  std::filesystem::create_directories(o.out_dir);

  gsrender::RasterizeOptions ropts;
  ropts.normalize_depth = o.normalize_depth;
  ropts.threads = o.common.resolved_threads();
  for (const auto& cam : cams) {
    const auto res = gsrender::rasterize(prims, cam, ropts);
    const std::string depth_path = o.out_dir + "/" + cam.name + "_depth.pfm";
    const std::string sem_path = o.out_dir + "/" + cam.name + "_semantic.pgm";
    gsrender::write_depth_pfm(depth_path, res.depth);
    gsrender::write_semantic_pgm(sem_path, res.semantics);
    manifest.outputs.push_back(depth_path);
    manifest.outputs.push_back(sem_path);
  }

  manifest.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_manifest(o.out_dir + "/manifest.json", manifest);
}

}  // namespace

void register_render(CLI::App& app) {
  auto opts = std::make_shared<RenderOpts>();
  CLI::App* cmd =
      app.add_subcommand("render", "rasterize a grid into per-camera depth and semantic maps");
  cmd->add_option("--grid", opts->grid_path, "input SVO grid")->required();
  cmd->add_option("--cams", opts->cams_path, "camera rig file")->required();
  cmd->add_option("--out-dir", opts->out_dir, "output directory")->required();
  cmd->add_option("--layout", opts->layout_path, "BVL layout whose line codes overwrite ground voxels");
  cmd->add_option("--line-map", opts->line_map, "layout-code:grid-class pairs for --layout");
  cmd->add_option("--opacity", opts->opacity, "per-voxel gaussian opacity");
  cmd->add_option("--scale-factor", opts->scale_factor, "gaussian scale as a voxel-size fraction");
  cmd->add_flag("--normalize-depth", opts->normalize_depth,
                "divide accumulated depth by accumulated opacity");
  opts->common.attach(cmd);
  cmd->callback([opts] { run(*opts); });
}

}  // namespace occscene::cli
