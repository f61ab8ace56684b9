// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#include <chrono>
#include <memory>

#include "cli.hpp"
#include "occscene/core/errors.hpp"
#include "occscene/occdiff/ddim.hpp"
#include "occscene/voxgrid/codec.hpp"
#include "occscene/voxgrid/embedding.hpp"

namespace occscene::cli {
namespace {

struct EditOpts {
  CommonOpts common;
  std::string grid_path, layout_ori_path, layout_new_path;
  std::string out_latent, out_grid;
  std::string table_path;
  std::string denoiser = "linear";  // zero | linear | condition
  std::uint32_t steps = 50;
  double guidance = 1.0;
  std::uint32_t schedule_steps = 1000;
  double beta_min = 1e-4, beta_max = 2e-2;
};

// The deterministic "VAE" of the editing pipeline: class-embedding fold of
// the grid into a 1-frame latent (C = D * C'), and the argmax unfold back.
occdiff::LatentVolume fold_grid(const voxgrid::SemanticOccupancyGrid& grid,
                                const voxgrid::ClassEmbeddingTable& table) {
  const auto fmap = voxgrid::embed_labels(grid, table);
  occdiff::LatentVolume vol = occdiff::LatentVolume::zeros(
      1, fmap.depth * fmap.embed_dim, fmap.dims[0], fmap.dims[1]);
  for (std::uint32_t y = 0; y < vol.height; ++y)
    for (std::uint32_t x = 0; x < vol.width; ++x)
      for (std::uint32_t k = 0; k < fmap.depth; ++k)
        for (std::uint32_t e = 0; e < fmap.embed_dim; ++e)
          vol.values[vol.index(0, k * fmap.embed_dim + e, y, x)] =
              fmap.values[fmap.offset(y, x, k) + e];
  return vol;
}

voxgrid::SemanticOccupancyGrid unfold_latent(const occdiff::LatentVolume& vol,
                                             const voxgrid::ClassEmbeddingTable& table,
                                             const voxgrid::SemanticOccupancyGrid& like) {
  voxgrid::BevFeatureMap fmap;
  fmap.dims = {vol.height, vol.width};
  fmap.depth = like.dims[2];
  fmap.embed_dim = table.embed_dim;
  fmap.values.resize(vol.values.size());
  for (std::uint32_t y = 0; y < vol.height; ++y)
    for (std::uint32_t x = 0; x < vol.width; ++x)
      for (std::uint32_t k = 0; k < fmap.depth; ++k)
        for (std::uint32_t e = 0; e < fmap.embed_dim; ++e)
          fmap.values[fmap.offset(y, x, k) + e] =
              float(vol.values[vol.index(0, k * fmap.embed_dim + e, y, x)]);
  return voxgrid::unembed_labels(fmap, table, like.dims[2], like.voxel_size, like.origin);
}

void run(const EditOpts& o) {
  const auto start = std::chrono::steady_clock::now();
  const auto grid = voxgrid::load_svo(o.grid_path);
  const auto layout_ori = voxgrid::load_bvl(o.layout_ori_path);
  const auto layout_new = voxgrid::load_bvl(o.layout_new_path);
  const voxgrid::ClassEmbeddingTable table =
      o.table_path.empty() ? voxgrid::ClassEmbeddingTable::unit_rows(grid.num_classes, 8)
                           : voxgrid::load_cemb(o.table_path);

  std::unique_ptr<occdiff::Denoiser> denoiser;
  if (o.denoiser == "zero")
    denoiser = std::make_unique<occdiff::ZeroDenoiser>();
  else if (o.denoiser == "linear")
    denoiser = std::make_unique<occdiff::LinearDenoiser>(o.common.seed);
  else if (o.denoiser == "condition")
    denoiser = std::make_unique<occdiff::ConditionAdditiveDenoiser>(o.common.seed);
  else
    throw InvalidArgument("--denoiser must be zero, linear or condition");

  const auto schedule = occdiff::make_schedule(o.schedule_steps, o.beta_min, o.beta_max);
  const occdiff::LatentVolume z_ori = fold_grid(grid, table);
  const occdiff::LatentVolume z_new = occdiff::edit_pipeline(
      z_ori, layout_ori, layout_new, *denoiser, schedule, o.steps, o.guidance);

  occdiff::save_ltnt(o.out_latent, z_new);
  voxgrid::save_svo(o.out_grid, unfold_latent(z_new, table, grid));

  RunManifest manifest;
  manifest.command = "edit";
  manifest.seed = o.common.seed;
  manifest.inputs = {o.grid_path, o.layout_ori_path, o.layout_new_path};
  if (!o.table_path.empty()) manifest.inputs.push_back(o.table_path);
  manifest.outputs = {o.out_latent, o.out_grid};
  manifest.parameters["denoiser"] = o.denoiser;
  manifest.parameters["steps"] = o.steps;
  manifest.parameters["guidance"] = o.guidance;
  manifest.parameters["schedule_steps"] = o.schedule_steps;
  manifest.parameters["beta_min"] = o.beta_min;
  manifest.parameters["beta_max"] = o.beta_max;
  manifest.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_manifest(o.out_latent + ".manifest.json", manifest);
}

}  // namespace

void register_edit(CLI::App& app) {
  auto opts = std::make_shared<EditOpts>();
  CLI::App* cmd = app.add_subcommand(
      "edit", "apply a layout edit through DDIM inversion and conditional re-sampling");
  cmd->add_option("--grid", opts->grid_path, "original SVO grid")->required();
  cmd->add_option("--layout-ori", opts->layout_ori_path, "original BVL layout")->required();
  cmd->add_option("--layout-new", opts->layout_new_path, "edited BVL layout")->required();
  cmd->add_option("--out-latent", opts->out_latent, "edited latent (LTNT)")->required();
  cmd->add_option("--out-grid", opts->out_grid, "edited grid (SVO)")->required();
  cmd->add_option("--table", opts->table_path, "CEMB embedding table (default: unit rows, C'=8)");
  cmd->add_option("--denoiser", opts->denoiser, "zero | linear | condition");
  cmd->add_option("--steps", opts->steps, "DDIM steps");
  cmd->add_option("--guidance", opts->guidance, "classifier-free guidance scale");
  cmd->add_option("--schedule-steps", opts->schedule_steps, "training schedule length");
  cmd->add_option("--beta-min", opts->beta_min, "schedule beta at step 1");
  cmd->add_option("--beta-max", opts->beta_max, "schedule beta at the last step");
  opts->common.attach(cmd);
  cmd->callback([opts] { run(*opts); });
}

}  // namespace occscene::cli
