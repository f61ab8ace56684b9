// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "occscene/core/errors.hpp"
#include "occscene/occdiff/ddim.hpp"
#include "occscene/occdiff/denoiser.hpp"
#include "occscene/occdiff/latent.hpp"
#include "occscene/occdiff/patchify.hpp"
#include "occscene/occdiff/schedule.hpp"

using namespace occscene;
using namespace occscene::occdiff;

namespace {

LatentVolume random_volume(std::mt19937& rng, std::uint32_t t, std::uint32_t c, std::uint32_t h,
                           std::uint32_t w, bool f32_exact = false) {
  LatentVolume v = LatentVolume::zeros(t, c, h, w);
  std::normal_distribution<double> n(0.0, 1.0);
  for (auto& x : v.values) x = f32_exact ? double(float(n(rng))) : n(rng);
  return v;
}

double linf(const LatentVolume& a, const LatentVolume& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

voxgrid::BevLayout simple_layout(std::uint32_t h, std::uint32_t w, std::uint8_t fill = 0) {
  voxgrid::BevLayout l;
  l.dims = {h, w};
  l.palette_size = 4;
  l.codes.assign(std::size_t(h) * w, fill);
  return l;
}

}  // namespace

TEST_CASE("make_schedule") {
  SUBCASE("single step") {
    const auto s = make_schedule(1, 1e-4, 2e-2);
    REQUIRE(s.beta.size() == 1);
    CHECK(s.beta[0] == doctest::Approx(1e-4));
    CHECK(s.alpha_bar[0] == doctest::Approx(1.0 - 1e-4));
  }
  SUBCASE("canonical 1000-step schedule, checked by independent log-sum") {
    const auto s = make_schedule(1000, 1e-4, 2e-2);
    long double log_sum = 0.0L;
    for (std::uint32_t t = 0; t < 1000; ++t) {
      const long double beta = 1e-4L + (2e-2L - 1e-4L) * t / 999.0L;
      log_sum += std::log(1.0L - beta);
    }
    const double expected = double(std::exp(log_sum));
    CHECK(s.alpha_bar.back() == doctest::Approx(expected).epsilon(1e-10));
    CHECK(s.alpha_bar.back() == doctest::Approx(4.04e-5).epsilon(0.01));
  }
  SUBCASE("alpha_bar is strictly decreasing, beta strictly increasing") {
    const auto s = make_schedule(300, 5e-4, 1e-2);
    for (std::uint32_t t = 1; t < 300; ++t) {
      CHECK(s.beta[t] > s.beta[t - 1]);
      CHECK(s.alpha_bar[t] < s.alpha_bar[t - 1]);
      CHECK(s.alpha_bar[t] > 0.0);
      CHECK(s.alpha_bar[t] < 1.0);
    }
  }
  SUBCASE("bad ranges") {
    CHECK_THROWS_AS(make_schedule(10, 2e-2, 2e-2), BadRange);
    CHECK_THROWS_AS(make_schedule(10, 0.0, 2e-2), BadRange);
    CHECK_THROWS_AS(make_schedule(10, 1e-4, 1.0), BadRange);
    CHECK_THROWS_AS(make_schedule(0, 1e-4, 2e-2), BadRange);
  }
}

TEST_CASE("patchify / unpatchify") {
  std::mt19937 rng(3);

  SUBCASE("P=1 identity embedder tokens are per-pixel channel vectors") {
    const auto frame = random_volume(rng, 1, 3, 2, 2);
    const auto grid = patchify(frame, 0, Condition::none(), 1, PatchEmbedder::make_identity(3));
    CHECK(grid.tokens == 4);
    CHECK(grid.embed_dim == 3);
    for (std::uint32_t y = 0; y < 2; ++y)
      for (std::uint32_t x = 0; x < 2; ++x)
        for (std::uint32_t c = 0; c < 3; ++c)
          CHECK(grid.values[std::size_t(y * 2 + x) * 3 + c] ==
                frame.values[frame.index(0, c, y, x)]);
  }

  SUBCASE("L arithmetic: 4x4 with P=2 gives 4 tokens") {
    const auto frame = random_volume(rng, 1, 2, 4, 4);
    const auto grid = patchify(frame, 0, Condition::none(), 2, PatchEmbedder::make_identity(8));
    CHECK(grid.tokens == 4);
    CHECK(grid.embed_dim == 2 * 2 * 2);
  }

  SUBCASE("identity round trip with a concatenated condition") {
    const auto frame = random_volume(rng, 1, 4, 6, 8);
    const auto layout = simple_layout(6, 8, 2);
    const Condition cond = layout_condition(layout, 6, 8);
    const std::uint32_t plen = (4 + cond.channels) * 2 * 2;
    const auto grid = patchify(frame, 0, cond, 2, PatchEmbedder::make_identity(plen));
    const auto back = unpatchify(grid, PatchEmbedder::make_identity(plen));
    CHECK(back.channels == 4 + cond.channels);
    // Latent channels come back bit-exact; condition channels carry the
    // one-hot stack.
    for (std::uint32_t c = 0; c < 4; ++c)
      for (std::uint32_t y = 0; y < 6; ++y)
        for (std::uint32_t x = 0; x < 8; ++x)
          CHECK(back.values[back.index(0, c, y, x)] == frame.values[frame.index(0, c, y, x)]);
    for (std::uint32_t y = 0; y < 6; ++y)
      for (std::uint32_t x = 0; x < 8; ++x)
        CHECK(back.values[back.index(0, 4 + 2, y, x)] == 1.0);
  }

  SUBCASE("single-token grid is a single patch") {
    const auto frame = random_volume(rng, 1, 2, 2, 2);
    const auto grid = patchify(frame, 0, Condition::none(), 2, PatchEmbedder::make_identity(8));
    CHECK(grid.tokens == 1);
    const auto back = unpatchify(grid, PatchEmbedder::make_identity(8));
    CHECK(back.values == frame.values);
  }

  SUBCASE("dim mismatches") {
    const auto frame = random_volume(rng, 1, 2, 4, 4);
    CHECK_THROWS_AS(patchify(frame, 0, Condition::none(), 3, PatchEmbedder::make_identity(8)),
                    DimMismatch);
    CHECK_THROWS_AS(patchify(frame, 0, Condition::none(), 2, PatchEmbedder::make_identity(9)),
                    DimMismatch);
    auto grid = patchify(frame, 0, Condition::none(), 2, PatchEmbedder::make_identity(8));
    CHECK_THROWS_AS(unpatchify(grid, PatchEmbedder::make_identity(7)), DimMismatch);
  }
}

TEST_CASE("cfg_mix") {
  std::mt19937 rng(5);
  const auto cond = random_volume(rng, 2, 3, 4, 4);
  const auto uncond = random_volume(rng, 2, 3, 4, 4);

  SUBCASE("g = 1 returns the conditional prediction") {
    CHECK(linf(cfg_mix(cond, uncond, 1.0), cond) == 0.0);
  }
  SUBCASE("g = 0 returns the unconditional prediction") {
    CHECK(linf(cfg_mix(cond, uncond, 0.0), uncond) == 0.0);
  }
  SUBCASE("g = 4 hand case") {
    auto a = LatentVolume::zeros(1, 1, 1, 1);
    auto b = LatentVolume::zeros(1, 1, 1, 1);
    a.values[0] = 1.0;
    b.values[0] = 0.5;
    CHECK(cfg_mix(a, b, 4.0).values[0] == doctest::Approx(2.5));
  }
  SUBCASE("identical predictions are a fixed point for any g") {
    for (double g : {-2.0, 0.0, 1.0, 7.5}) CHECK(linf(cfg_mix(cond, cond, g), cond) == 0.0);
  }
  SUBCASE("shape mismatch") {
    const auto small = random_volume(rng, 1, 3, 4, 4);
    CHECK_THROWS_AS(cfg_mix(cond, small, 1.0), ShapeMismatch);
  }
}

TEST_CASE("ddim_sample") {
  std::mt19937 rng(11);
  const auto schedule = make_schedule(1000, 1e-4, 2e-2);
  const auto z_t = random_volume(rng, 2, 3, 6, 6);
  const ZeroDenoiser zero;

  SUBCASE("zero-denoiser closed form over the full traversal") {
    const auto z0 = ddim_sample(zero, z_t, Condition::none(), schedule, 50);
    const double scale = 1.0 / std::sqrt(schedule.alpha_bar.back());
    double err = 0.0;
    for (std::size_t i = 0; i < z_t.values.size(); ++i)
      err = std::max(err, std::abs(z0.values[i] - z_t.values[i] * scale));
    CHECK(err <= 1e-9);
  }

  SUBCASE("num_steps = 0 is the identity") {
    CHECK(linf(ddim_sample(zero, z_t, Condition::none(), schedule, 0), z_t) == 0.0);
  }

  SUBCASE("matches a step-by-step scalar reference for the diagonal denoiser") {
    const LinearDenoiser lin(42);
    const auto z0 = ddim_sample(lin, z_t, Condition::none(), schedule, 50);
    // Scalar reference: every element evolves independently under the
    // diagonal map, so a per-element recurrence must agree.
    const std::size_t fs = z_t.frame_size();
    double err = 0.0;
    for (std::size_t e = 0; e < z_t.values.size(); ++e) {
      const double a = lin.coefficient(e % fs);
      double x = z_t.values[e];
      for (int j = 50; j-- > 0;) {
        const std::uint32_t t = std::uint32_t((std::uint64_t(j + 1) * 1000) / 50);
        const std::uint32_t tp = j == 0 ? 0 : std::uint32_t((std::uint64_t(j) * 1000) / 50);
        const double ab = schedule.alpha_bar_at(t), abp = schedule.alpha_bar_at(tp);
        const double eps = a * x;
        x = std::sqrt(abp) * (x - std::sqrt(1.0 - ab) * eps) / std::sqrt(ab) +
            std::sqrt(1.0 - abp) * eps;
      }
      err = std::max(err, std::abs(z0.values[e] - x));
    }
    CHECK(err <= 1e-6);
  }

  SUBCASE("step range") {
    CHECK_THROWS_AS(ddim_sample(zero, z_t, Condition::none(), schedule, 1001), StepRange);
  }
}

TEST_CASE("ddim_invert") {
  std::mt19937 rng(13);
  const auto schedule = make_schedule(1000, 1e-4, 2e-2);
  const auto z_0 = random_volume(rng, 1, 4, 8, 8);
  const ZeroDenoiser zero;

  SUBCASE("zero-denoiser inversion is the algebraic inverse of sampling") {
    const auto z_t = ddim_invert(zero, z_0, Condition::none(), schedule, 50);
    const double scale = std::sqrt(schedule.alpha_bar.back());
    double err = 0.0;
    for (std::size_t i = 0; i < z_0.values.size(); ++i)
      err = std::max(err, std::abs(z_t.values[i] - z_0.values[i] * scale));
    CHECK(err <= 1e-12);
  }

  SUBCASE("sample(invert(z)) round trip with the linear toy denoiser") {
    const LinearDenoiser lin(7);
    const auto z_t = ddim_invert(lin, z_0, Condition::none(), schedule, 50);
    const auto back = ddim_sample(lin, z_t, Condition::none(), schedule, 50);
    CHECK(linf(back, z_0) <= 1e-4);
  }

  SUBCASE("invert(sample(z)) round trip") {
    const LinearDenoiser lin(19);
    const auto z_t0 = random_volume(rng, 1, 4, 8, 8);
    const auto z = ddim_sample(lin, z_t0, Condition::none(), schedule, 50);
    const auto back = ddim_invert(lin, z, Condition::none(), schedule, 50);
    CHECK(linf(back, z_t0) <= 1e-4);
  }

  SUBCASE("num_steps = 0 is the identity") {
    CHECK(linf(ddim_invert(zero, z_0, Condition::none(), schedule, 0), z_0) == 0.0);
  }
}

TEST_CASE("edit_pipeline") {
  std::mt19937 rng(17);
  const auto schedule = make_schedule(1000, 1e-4, 2e-2);
  const auto z_ori = random_volume(rng, 1, 4, 8, 8);
  const auto layout = simple_layout(8, 8, 1);

  SUBCASE("identical layouts reduce to the invert-sample round trip") {
    const LinearDenoiser lin(23);
    const auto z_new = edit_pipeline(z_ori, layout, layout, lin, schedule, 50);
    CHECK(linf(z_new, z_ori) <= 1e-4);
  }

  SUBCASE("zero-denoiser ignores the condition entirely") {
    const ZeroDenoiser zero;
    auto edited = layout;
    edited.codes[5] = 3;
    const auto z_new = edit_pipeline(z_ori, layout, edited, zero, schedule, 50);
    CHECK(linf(z_new, z_ori) <= 1e-12);
  }

  SUBCASE("a remove-car edit shows up exactly at the edited cells") {
    const ConditionAdditiveDenoiser denoiser(31);
    auto edited = layout;
    // Clear a 2x2 footprint back to code 0.
    for (std::uint32_t y = 2; y < 4; ++y)
      for (std::uint32_t x = 5; x < 7; ++x) edited.codes[edited.index(y, x)] = 0;

    const auto z_same = edit_pipeline(z_ori, layout, layout, denoiser, schedule, 50);
    CHECK(linf(z_same, z_ori) <= 1e-4);

    const auto z_new = edit_pipeline(z_ori, layout, edited, denoiser, schedule, 50);
    double off_edit = 0.0, on_edit = 0.0;
    for (std::uint32_t c = 0; c < z_ori.channels; ++c)
      for (std::uint32_t y = 0; y < 8; ++y)
        for (std::uint32_t x = 0; x < 8; ++x) {
          const double d = std::abs(z_new.values[z_new.index(0, c, y, x)] -
                                    z_ori.values[z_ori.index(0, c, y, x)]);
          const bool edited_cell = y >= 2 && y < 4 && x >= 5 && x < 7;
          if (edited_cell)
            on_edit = std::max(on_edit, d);
          else
            off_edit = std::max(off_edit, d);
        }
    // The diagonal denoiser keeps positions independent: the layout change
    // can only reach the edited cells.
    CHECK(on_edit > 1e-3);
    CHECK(off_edit <= 1e-4);
  }
}

TEST_CASE("forecast_pack") {
  std::mt19937 rng(19);
  SUBCASE("2 conditional + 6 future frames") {
    const auto clean = random_volume(rng, 2, 3, 4, 4);
    const auto noise = random_volume(rng, 6, 3, 4, 4);
    const auto pack = forecast_pack(clean, noise, 600);
    CHECK(pack.volume.frames == 8);
    CHECK(pack.step == 600);
    REQUIRE(pack.loss_mask.size() == 8);
    const std::vector<double> expect = {0, 0, 1, 1, 1, 1, 1, 1};
    CHECK(pack.loss_mask == expect);
    // Conditional frames are bit-equal to their inputs.
    for (std::uint32_t t = 0; t < 2; ++t)
      for (std::size_t i = 0; i < clean.frame_size(); ++i)
        CHECK(pack.volume.frame(t)[i] == clean.frame(t)[i]);
    for (std::uint32_t t = 0; t < 6; ++t)
      for (std::size_t i = 0; i < noise.frame_size(); ++i)
        CHECK(pack.volume.frame(2 + t)[i] == noise.frame(t)[i]);
  }
  SUBCASE("minimal packing") {
    const auto clean = random_volume(rng, 1, 2, 2, 2);
    const auto noise = random_volume(rng, 1, 2, 2, 2);
    const auto pack = forecast_pack(clean, noise, 100);
    CHECK(pack.volume.frames == 2);
    CHECK(pack.loss_mask == std::vector<double>{0, 1});
  }
  SUBCASE("shape mismatch") {
    const auto clean = random_volume(rng, 1, 2, 2, 2);
    const auto noise = random_volume(rng, 1, 2, 4, 4);
    CHECK_THROWS_AS(forecast_pack(clean, noise, 1), ShapeMismatch);
  }
}

TEST_CASE("ltnt codec round trip") {
  std::mt19937 rng(23);
  const auto v = random_volume(rng, 3, 2, 5, 4, /*f32_exact=*/true);
  const auto bytes = encode_ltnt(v);
  CHECK(bytes.size() == 20 + v.size() * 4);
  const auto back = decode_ltnt(bytes);
  CHECK(back.frames == 3);
  CHECK(back.channels == 2);
  CHECK(back.height == 5);
  CHECK(back.width == 4);
  CHECK(back.values == v.values);  // values were f32-exact by construction

  auto bad = bytes;
  bad[1] = 'X';
  CHECK_THROWS_AS(decode_ltnt(bad), BadMagic);
  bad = bytes;
  bad.pop_back();
  CHECK_THROWS_AS(decode_ltnt(bad), TruncatedPayload);
}

TEST_CASE("layout_condition one-hot pooling") {
  auto layout = simple_layout(4, 4, 0);
  layout.codes[layout.index(0, 0)] = 2;
  const auto cond = layout_condition(layout, 2, 2);  // 2x downsample
  CHECK(cond.channels == 4);
  // Latent cell (0,0) pools layout cell (0,0) -> code 2.
  CHECK(cond.data[(2 * 2 + 0) * 2 + 0] == 1.0);
  CHECK(cond.data[(0 * 2 + 0) * 2 + 0] == 0.0);
  // Every cell carries exactly one hot channel.
  for (std::uint32_t y = 0; y < 2; ++y)
    for (std::uint32_t x = 0; x < 2; ++x) {
      double sum = 0.0;
      for (std::uint32_t c = 0; c < 4; ++c) sum += cond.data[(c * 2 + y) * 2 + x];
      CHECK(sum == 1.0);
    }
}
