// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#include <chrono>
#include <filesystem>

#include "cli.hpp"
#include "occscene/core/errors.hpp"
#include "occscene/geomwarp/noise_prior.hpp"
#include "occscene/gsrender/image_io.hpp"
#include "occscene/occdiff/latent.hpp"

namespace occscene::cli {
namespace {

struct WarpOpts {
  CommonOpts common;
  std::string latent_path, depth_path, cams_path, ref_name, tgt_name, out_dir;
  std::string mode = "warp";  // warp | vanilla | geometric
  float lambda = 0.3f;
};

const gsrender::Camera& find_camera(const std::vector<gsrender::Camera>& cams,
                                    const std::string& name, const std::string& path) {
  for (const auto& c : cams)
    if (c.name == name) return c;
  throw InvalidArgument(path + ": no camera named \"" + name + "\"");
}

void run(const WarpOpts& o) {
  const auto start = std::chrono::steady_clock::now();
  const auto vol = occdiff::load_ltnt(o.latent_path);
  const auto pfm = gsrender::read_pfm(o.depth_path);
  const auto cams = gsrender::load_camera_rig(o.cams_path);
  const auto& cam_ref = find_camera(cams, o.ref_name, o.cams_path);
  const auto& cam_tgt = find_camera(cams, o.tgt_name, o.cams_path);

  geomwarp::LatentImage z_c;
  z_c.height = vol.height;
  z_c.width = vol.width;
  z_c.channels = vol.channels;
  if (pfm.width % vol.width != 0 || pfm.height % vol.height != 0 ||
      pfm.width / vol.width != pfm.height / vol.height)
    throw ResolutionMismatch(o.depth_path + ": depth resolution is not an integer multiple of " +
                             o.latent_path);
  z_c.downsample = pfm.width / vol.width;
  z_c.values.resize(z_c.height * z_c.width * z_c.channels);
  for (std::uint32_t c = 0; c < vol.channels; ++c)
    for (std::uint32_t y = 0; y < vol.height; ++y)
      for (std::uint32_t x = 0; x < vol.width; ++x)
        z_c.values[z_c.index(x, y, c)] = float(vol.values[vol.index(0, c, y, x)]);

  gsrender::DepthMap depth;
  depth.width = pfm.width;
  depth.height = pfm.height;
  depth.values = pfm.values;
  depth.alpha.assign(depth.values.size(), 1.0f);

  std::filesystem::create_directories(o.out_dir);
  RunManifest manifest;
  manifest.command = "warp";
  manifest.seed = o.common.seed;
  manifest.inputs = {o.latent_path, o.depth_path, o.cams_path};
  manifest.parameters["mode"] = o.mode;
  manifest.parameters["lambda"] = o.lambda;
  manifest.parameters["ref"] = o.ref_name;
  manifest.parameters["tgt"] = o.tgt_name;

  geomwarp::LatentImage out;
  if (o.mode == "warp") {
    auto res = geomwarp::warp_latent(z_c, depth, cam_ref, cam_tgt);
    out = std::move(res.latent);
    const std::string vpath = o.out_dir + "/validity.pgm";
    std::vector<std::uint8_t> v(res.valid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = res.valid[i] ? 255 : 0;
    gsrender::write_pgm(vpath, v, z_c.width, z_c.height);
    manifest.outputs.push_back(vpath);
  } else if (o.mode == "vanilla" || o.mode == "geometric") {
    geomwarp::NoiseSpec spec;
    spec.lambda = o.lambda;
    spec.seed = o.common.seed;
    spec.mode =
        o.mode == "vanilla" ? geomwarp::NoiseMode::kVanilla : geomwarp::NoiseMode::kGeometric;
    out = geomwarp::build_noise_prior(z_c, depth, cam_ref, cam_tgt, spec);
  } else {
    throw InvalidArgument("--mode must be warp, vanilla or geometric");
  }

  for (std::uint32_t c = 0; c < out.channels; ++c) {
    char name[32];
    std::snprintf(name, sizeof(name), "channel_%02u.pfm", c);
    std::vector<float> plane(std::size_t(out.height) * out.width);
    for (std::uint32_t y = 0; y < out.height; ++y)
      for (std::uint32_t x = 0; x < out.width; ++x)
        plane[std::size_t(y) * out.width + x] = out.at(x, y, c);
    const std::string path = o.out_dir + "/" + name;
    gsrender::write_pfm(path, plane, out.width, out.height);
    manifest.outputs.push_back(path);
  }

  manifest.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_manifest(o.out_dir + "/manifest.json", manifest);
}

}  // namespace

void register_warp(CLI::App& app) {
  auto opts = std::make_shared<WarpOpts>();
  CLI::App* cmd = app.add_subcommand(
      "warp", "reproject a latent through rendered depth; optionally build the noise prior");
  cmd->add_option("--latent", opts->latent_path, "LTNT latent (frame 0 is used)")->required();
  cmd->add_option("--depth", opts->depth_path, "target-view depth PFM")->required();
  cmd->add_option("--cams", opts->cams_path, "camera rig file")->required();
  cmd->add_option("--ref", opts->ref_name, "reference camera name")->required();
  cmd->add_option("--tgt", opts->tgt_name, "target camera name")->required();
  cmd->add_option("--out-dir", opts->out_dir, "output directory")->required();
  cmd->add_option("--mode", opts->mode, "warp | vanilla | geometric");
  cmd->add_option("--lambda", opts->lambda, "prior balancing coefficient");
  opts->common.attach(cmd);
  cmd->callback([opts] { run(*opts); });
}

}  // namespace occscene::cli
