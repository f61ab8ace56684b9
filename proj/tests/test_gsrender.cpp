// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <random>

#include "helpers.hpp"
#include "occscene/core/errors.hpp"
#include "occscene/voxgrid/codec.hpp"
#include "occscene/gsrender/camera.hpp"
#include "occscene/gsrender/image_io.hpp"
#include "occscene/gsrender/primitives.hpp"
#include "occscene/gsrender/rasterize.hpp"

using namespace occscene;
using namespace occscene::gsrender;

namespace {

Camera make_camera(float fx, float fy, float cx, float cy, std::uint32_t w, std::uint32_t h) {
  Camera cam;
  cam.name = "cam";
  cam.fx = fx;
  cam.fy = fy;
  cam.cx = cx;
  cam.cy = cy;
  cam.width = w;
  cam.height = h;
  return cam;
}

GaussianPrimitive make_prim(const Eigen::Vector3f& pos, float scale, float opacity,
                            std::uint8_t label) {
  GaussianPrimitive p;
  p.position = pos;
  p.scale = Eigen::Vector3f::Constant(scale);
  p.opacity = opacity;
  p.label = label;
  return p;
}

GaussianPrimitiveSet random_scene(std::mt19937& rng, int count) {
  std::uniform_real_distribution<float> xy(-3.0f, 3.0f), z(3.0f, 20.0f);
  std::uniform_real_distribution<float> scale(0.02f, 0.12f), alpha(0.3f, 0.99f);
  std::uniform_int_distribution<int> label(1, 12);
  std::normal_distribution<float> qn(0.0f, 1.0f);
  GaussianPrimitiveSet prims;
  for (int i = 0; i < count; ++i) {
    GaussianPrimitive p;
    p.position = {xy(rng), xy(rng), z(rng)};
    p.scale = {scale(rng), scale(rng), scale(rng)};
    Eigen::Quaternionf q(qn(rng), qn(rng), qn(rng), qn(rng));
    p.rotation = q.normalized();
    p.opacity = alpha(rng);
    p.label = std::uint8_t(label(rng));
    prims.push_back(p);
  }
  return prims;
}

}  // namespace

TEST_CASE("voxels_to_gaussians") {
  SUBCASE("all-free grid gives an empty set") {
    voxgrid::SemanticOccupancyGrid g;
    g.dims = {4, 4, 4};
    g.num_classes = 3;
    g.labels.assign(g.voxel_count(), 0);
    CHECK(voxels_to_gaussians(g).empty());
  }
  SUBCASE("one occupied voxel, hand-checked attributes") {
    voxgrid::SemanticOccupancyGrid g;
    g.dims = {1, 1, 1};
    g.num_classes = 5;
    g.labels = {3};
    const auto prims = voxels_to_gaussians(g, {0.8f, 0.5f});
    REQUIRE(prims.size() == 1);
    CHECK(prims[0].position.isApprox(Eigen::Vector3f(0.5f, 0.5f, 0.5f)));
    CHECK(prims[0].scale.isApprox(Eigen::Vector3f(0.5f, 0.5f, 0.5f)));
    CHECK(prims[0].opacity == 0.8f);
    CHECK(prims[0].label == 3);
    CHECK(prims[0].rotation.isApprox(Eigen::Quaternionf::Identity()));
  }
  SUBCASE("count equals occupied voxels on a random grid") {
    std::mt19937 rng(5);
    const auto g = testutil::random_grid(rng, {64, 64, 64}, 17, 0.1);
    std::size_t occupied = 0;
    for (auto l : g.labels) occupied += (l != 0 && l != 255) ? 1 : 0;
    CHECK(voxels_to_gaussians(g).size() == occupied);
  }
  SUBCASE("unknown voxels produce no primitive") {
    voxgrid::SemanticOccupancyGrid g;
    g.dims = {2, 1, 1};
    g.num_classes = 4;
    g.labels = {255, 1};
    CHECK(voxels_to_gaussians(g).size() == 1);
  }
}

TEST_CASE("project_gaussian") {
  const Camera cam = make_camera(400.0f, 300.0f, 64.0f, 48.0f, 128, 96);

  SUBCASE("on-axis closed form") {
    const float sigma = 0.02f;
    const auto p = make_prim({0.0f, 0.0f, 1.0f}, sigma, 0.9f, 1);
    const auto proj = project_gaussian(p, cam);
    REQUIRE(proj.has_value());
    CHECK(proj->depth == doctest::Approx(1.0));
    CHECK(proj->mean2d.x() == doctest::Approx(64.0));
    CHECK(proj->mean2d.y() == doctest::Approx(48.0));
    CHECK(proj->cov2d(0, 0) == doctest::Approx(400.0 * 400.0 * sigma * sigma + 0.3).epsilon(1e-5));
    CHECK(proj->cov2d(1, 1) == doctest::Approx(300.0 * 300.0 * sigma * sigma + 0.3).epsilon(1e-5));
    CHECK(proj->cov2d(0, 1) == doctest::Approx(0.0).epsilon(1e-6));
  }

  SUBCASE("behind the camera is culled") {
    const auto p = make_prim({0.0f, 0.0f, -1.0f}, 0.1f, 0.9f, 1);
    CHECK(!project_gaussian(p, cam).has_value());
    CHECK(!project_gaussian(make_prim({0, 0, 0.04f}, 0.1f, 0.9f, 1), cam).has_value());
  }

  SUBCASE("90-degree in-plane camera roll conjugates cov2d") {
    Camera cam_sq = make_camera(200.0f, 200.0f, 32.0f, 32.0f, 64, 64);
    GaussianPrimitive p = make_prim({0.0f, 0.0f, 2.0f}, 1.0f, 0.9f, 1);
    p.scale = {0.05f, 0.15f, 0.08f};  // anisotropic
    const auto base = project_gaussian(p, cam_sq);
    Camera rolled = cam_sq;
    rolled.rotation =
        Eigen::AngleAxisf(float(M_PI) / 2.0f, Eigen::Vector3f::UnitZ()).toRotationMatrix();
    const auto rot = project_gaussian(p, rolled);
    REQUIRE(base.has_value());
    REQUIRE(rot.has_value());
    CHECK(rot->cov2d(0, 0) == doctest::Approx(base->cov2d(1, 1)).epsilon(1e-4));
    CHECK(rot->cov2d(1, 1) == doctest::Approx(base->cov2d(0, 0)).epsilon(1e-4));
    CHECK(rot->cov2d(0, 1) == doctest::Approx(-base->cov2d(0, 1)).epsilon(1e-4));
  }

  SUBCASE("cov2d stays symmetric positive definite with the floor") {
    std::mt19937 rng(17);
    const auto prims = random_scene(rng, 100);
    for (const auto& p : prims) {
      const auto proj = project_gaussian(p, cam);
      if (!proj) continue;
      CHECK(proj->cov2d(0, 1) == proj->cov2d(1, 0));
      const float tr = proj->cov2d(0, 0) + proj->cov2d(1, 1);
      const float det = proj->cov2d(0, 0) * proj->cov2d(1, 1) -
                        proj->cov2d(0, 1) * proj->cov2d(1, 0);
      const float lmin = 0.5f * tr - std::sqrt(std::max(0.0f, 0.25f * tr * tr - det));
      CHECK(lmin >= 0.3f * 0.999f);
    }
  }
}

TEST_CASE("rasterize basics") {
  SUBCASE("empty set: depth all 0, semantics all 255") {
    const Camera cam = make_camera(100, 100, 32, 32, 64, 64);
    const auto res = rasterize({}, cam);
    for (float d : res.depth.values) CHECK(d == 0.0f);
    for (auto l : res.semantics.labels) CHECK(l == kNoClass);
  }

  SUBCASE("single on-axis gaussian: center-pixel depth = 5 * alpha'") {
    // cx = 64.5 puts the projected mean exactly on the center of pixel (64, 64).
    const Camera cam = make_camera(200, 200, 64.5f, 64.5f, 128, 128);
    const auto p = make_prim({0, 0, 5.0f}, 0.1f, 0.97f, 7);
    const auto res = rasterize({p}, cam);
    const float alpha_center = 0.97f;  // exp(0) at the exact mean
    CHECK(res.depth.at(64, 64) == doctest::Approx(5.0 * alpha_center).epsilon(1e-6));
    CHECK(res.semantics.at(64, 64) == 7);
  }

  SUBCASE("two stacked gaussians reproduce the hand-computed composite") {
    const Camera cam = make_camera(200, 200, 64.5f, 64.5f, 128, 128);
    auto front = make_prim({0, 0, 2.0f}, 0.05f, 0.6f, 1);   // label A
    auto back = make_prim({0, 0, 4.0f}, 0.05f, 0.9f, 2);    // label B
    const auto res = rasterize({front, back}, cam);
    // masses: A = 0.6, B = 0.9 * (1 - 0.6) = 0.36 -> argmax A
    CHECK(res.semantics.at(64, 64) == 1);
    CHECK(res.depth.at(64, 64) == doctest::Approx(0.6 * 2.0 + 0.36 * 4.0).epsilon(1e-6));
    CHECK(res.depth.alpha[res.depth.index(64, 64)] == doctest::Approx(0.96).epsilon(1e-6));
  }

  SUBCASE("depth ties resolve by input order") {
    const Camera cam = make_camera(200, 200, 64.5f, 64.5f, 128, 128);
    auto a = make_prim({0, 0, 3.0f}, 0.05f, 0.9f, 4);
    auto b = make_prim({0, 0, 3.0f}, 0.05f, 0.9f, 9);
    CHECK(rasterize({a, b}, cam).semantics.at(64, 64) == 4);
    CHECK(rasterize({b, a}, cam).semantics.at(64, 64) == 9);
  }

  SUBCASE("normalized depth divides by accumulated opacity") {
    const Camera cam = make_camera(200, 200, 64.5f, 64.5f, 128, 128);
    const auto p = make_prim({0, 0, 5.0f}, 0.1f, 0.5f, 1);
    RasterizeOptions opts;
    opts.normalize_depth = true;
    const auto res = rasterize({p}, cam, opts);
    CHECK(res.depth.at(64, 64) == doctest::Approx(5.0).epsilon(1e-5));
  }
}

TEST_CASE("rasterize matches composite_reference") {
  std::mt19937 rng(23);
  const Camera cam = make_camera(220, 220, 64.0f, 64.0f, 128, 128);
  for (int scene = 0; scene < 5; ++scene) {
    const auto prims = random_scene(rng, 150);

    SUBCASE(("scene " + std::to_string(scene)).c_str()) {}
    const auto fast = rasterize(prims, cam);
    const auto ref = composite_reference(prims, cam);
    float max_depth_diff = 0.0f;
    std::size_t sem_diff = 0;
    for (std::size_t i = 0; i < fast.depth.values.size(); ++i) {
      max_depth_diff = std::max(max_depth_diff,
                                std::abs(fast.depth.values[i] - ref.depth.values[i]));
      sem_diff += fast.semantics.labels[i] != ref.semantics.labels[i] ? 1 : 0;
    }
    CHECK(sem_diff == 0);
    CHECK(max_depth_diff <= 1e-5f);

    // Transmittance accounting: accumulated opacity stays in [0, 1] and
    // depth is non-negative wherever opacity registered.
    for (std::size_t i = 0; i < ref.depth.values.size(); ++i) {
      CHECK(ref.depth.alpha[i] >= 0.0f);
      CHECK(ref.depth.alpha[i] <= 1.0f);
      if (ref.depth.alpha[i] > 0.0f) CHECK(ref.depth.values[i] >= 0.0f);
      CHECK(std::isfinite(ref.depth.values[i]));
    }
  }
}

TEST_CASE("single primitive renders bit-identically in both compositors") {
  const Camera cam = make_camera(220, 220, 63.5f, 63.5f, 128, 128);
  const auto p = make_prim({0.3f, -0.2f, 6.0f}, 0.2f, 0.85f, 11);
  const auto fast = rasterize({p}, cam);
  const auto ref = composite_reference({p}, cam);
  CHECK(fast.semantics.labels == ref.semantics.labels);
  CHECK(fast.depth.values == ref.depth.values);
}

TEST_CASE("rendering is invariant to input permutation without depth ties") {
  std::mt19937 rng(31);
  const Camera cam = make_camera(220, 220, 64.0f, 64.0f, 128, 128);
  auto prims = random_scene(rng, 60);
  const auto base = rasterize(prims, cam);
  std::shuffle(prims.begin(), prims.end(), rng);
  const auto shuffled = rasterize(prims, cam);
  CHECK(base.depth.values == shuffled.depth.values);
  CHECK(base.semantics.labels == shuffled.semantics.labels);
}

TEST_CASE("rasterize is deterministic across thread counts") {
  std::mt19937 rng(41);
  const Camera cam = make_camera(220, 220, 64.0f, 64.0f, 128, 128);
  const auto prims = random_scene(rng, 120);
  RasterizeOptions one, four;
  one.threads = 1;
  four.threads = 4;
  const auto a = rasterize(prims, cam, one);
  const auto b = rasterize(prims, cam, four);
  CHECK(a.depth.values == b.depth.values);
  CHECK(a.semantics.labels == b.semantics.labels);
}

TEST_CASE("overlay_layout_lines rewrites occupied ground voxels only") {
  voxgrid::SemanticOccupancyGrid g;
  g.dims = {4, 4, 3};
  g.num_classes = 12;
  g.voxel_size = 1.0f;
  g.labels.assign(g.voxel_count(), 0);
  // Ground slice at k=0 occupied with class 1 except one hole.
  for (std::uint32_t i = 0; i < 4; ++i)
    for (std::uint32_t j = 0; j < 4; ++j)
      if (!(i == 2 && j == 2)) g.labels[g.index(i, j, 0)] = 1;
  g.labels[g.index(1, 1, 1)] = 5;  // something above ground

  voxgrid::BevLayout layout;
  layout.dims = {4, 4};
  layout.cell_size = 1.0f;
  layout.palette_size = 4;
  layout.codes.assign(16, 0);
  layout.codes[layout.index(1, 1)] = 3;  // line code over (1, 1)
  layout.codes[layout.index(2, 2)] = 3;  // line code over the hole

  const auto out = overlay_layout_lines(g, layout, {{3, 9}});
  CHECK(out.at(1, 1, 0) == 9);        // relabeled ground voxel
  CHECK(out.at(2, 2, 0) == 0);        // hole stays free
  CHECK(out.at(0, 0, 0) == 1);        // unlisted codes untouched
  CHECK(out.at(1, 1, 1) == 5);        // above-ground voxel untouched
  CHECK(g.at(1, 1, 0) == 1);          // input grid unmodified
}

TEST_CASE("pfm round trip and pgm header") {
  const auto dir = std::filesystem::temp_directory_path() / "occscene_gsrender_io";
  std::filesystem::create_directories(dir);
  std::vector<float> img = {0.0f, 1.5f, -2.25f, 3.75f, 100.0f, 0.125f};
  const std::string pfm = (dir / "t.pfm").string();
  write_pfm(pfm, img, 3, 2);
  const auto back = read_pfm(pfm);
  CHECK(back.width == 3);
  CHECK(back.height == 2);
  CHECK(back.values == img);

  write_pgm((dir / "t.pgm").string(), {0, 128, 255, 7}, 2, 2);
  const auto bytes = voxgrid::read_file((dir / "t.pgm").string());
  const std::string header(bytes.begin(), bytes.begin() + 3);
  CHECK(header == "P5\n");
  CHECK(bytes.size() == 11 + 4);  // "P5\n2 2\n255\n" + payload
}

TEST_CASE("camera rig parsing") {
  const std::string text =
      "# name fx fy cx cy w h qw qx qy qz tx ty tz\n"
      "front 400 300 64 48 128 96 1 0 0 0 0.5 -0.25 1.5\n"
      "\n"
      "left 200 200 32 32 64 64 0.7071068 0 0.7071068 0 0 0 0\n";
  const auto cams = parse_camera_rig(text);
  REQUIRE(cams.size() == 2);
  CHECK(cams[0].name == "front");
  CHECK(cams[0].fx == 400.0f);
  CHECK(cams[0].translation.isApprox(Eigen::Vector3f(0.5f, -0.25f, 1.5f)));
  CHECK(cams[1].rotation.isApprox(
      Eigen::AngleAxisf(float(M_PI) / 2, Eigen::Vector3f::UnitY()).toRotationMatrix(), 1e-5f));
  CHECK_THROWS_AS(parse_camera_rig("broken 1 2 3\n"), Error);
}
