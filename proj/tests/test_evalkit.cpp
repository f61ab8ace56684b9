// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "helpers.hpp"
#include "occscene/core/errors.hpp"
#include "occscene/evalkit/distribution.hpp"
#include "occscene/evalkit/losses.hpp"
#include "occscene/evalkit/segmentation.hpp"

using namespace occscene;
using namespace occscene::evalkit;

namespace {

// Independent Lovasz-extension oracle: the extension of a monotone set
// function with Delta(empty) = 0 equals the superlevel-set integral
// LE(m) = integral_0^1 Delta({i : m_i > t}) dt, evaluated exactly over the
// sorted breakpoints. No gradient formula involved.
double lovasz_extension_oracle(const std::vector<double>& errors,
                               const std::vector<bool>& is_gt) {
  std::vector<double> cuts = errors;
  cuts.push_back(0.0);
  cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::size_t gts = 0;
  for (bool g : is_gt) gts += g ? 1 : 0;

  double integral = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double mid = 0.5 * (cuts[k] + cuts[k + 1]);
    std::size_t inter = gts, uni = gts;
    for (std::size_t i = 0; i < errors.size(); ++i) {
      if (errors[i] <= mid) continue;  // not in the superlevel set
      if (is_gt[i])
        --inter;
      else
        ++uni;
    }
    const double delta = uni == 0 ? 0.0 : 1.0 - double(inter) / double(uni);
    integral += delta * (cuts[k + 1] - cuts[k]);
  }
  return integral;
}

// The same oracle applied per present class to softmax probabilities.
double lovasz_softmax_oracle(const std::vector<std::vector<double>>& probs,
                             const std::vector<std::uint8_t>& labels) {
  std::set<std::uint8_t> present(labels.begin(), labels.end());
  double total = 0.0;
  for (std::uint8_t c : present) {
    std::vector<double> errors(labels.size());
    std::vector<bool> is_gt(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
      is_gt[i] = labels[i] == c;
      errors[i] = is_gt[i] ? 1.0 - probs[i][c] : probs[i][c];
    }
    total += lovasz_extension_oracle(errors, is_gt);
  }
  return total / double(present.size());
}

voxgrid::SemanticOccupancyGrid flat_grid(std::vector<std::uint8_t> labels,
                                         std::uint32_t num_classes) {
  voxgrid::SemanticOccupancyGrid g;
  g.dims = {std::uint32_t(labels.size()), 1, 1};
  g.num_classes = num_classes;
  g.labels = std::move(labels);
  return g;
}

BevHistogram impulse_hist(double x, double y) {
  return bev_histogram({Eigen::Vector3f(float(x), float(y), 0.0f)}, 5, 5, 0.0, 5.0, 0.0, 5.0);
}

}  // namespace

TEST_CASE("iou_miou") {
  SUBCASE("identical grids score 1 everywhere") {
    const auto g = flat_grid({0, 1, 2, 2, 3}, 4);
    const auto rep = iou_miou(g, g);
    CHECK(rep.miou == doctest::Approx(1.0));
    CHECK(rep.binary_iou == doctest::Approx(1.0));
    for (std::uint32_t c = 0; c < 4; ++c) CHECK(rep.per_class[c] == doctest::Approx(1.0));
  }
  SUBCASE("disjoint single-class masks score 0") {
    const auto pred = flat_grid({1, 1, 0, 0}, 2);
    const auto gt = flat_grid({0, 0, 1, 1}, 2);
    CHECK(iou_miou(pred, gt).per_class[1] == doctest::Approx(0.0));
  }
  SUBCASE("hand-tallied 2x2x1 case") {
    voxgrid::SemanticOccupancyGrid pred, gt;
    pred.dims = gt.dims = {2, 2, 1};
    pred.num_classes = gt.num_classes = 3;
    pred.labels = {1, 1, 2, 0};
    gt.labels = {1, 2, 2, 0};
    const auto rep = iou_miou(pred, gt);
    CHECK(rep.per_class[1] == doctest::Approx(0.5));
    CHECK(rep.per_class[2] == doctest::Approx(0.5));
    CHECK(rep.miou == doctest::Approx(0.5));
    // occupied masks: pred {0,1,2}, gt {0,1,2} -> binary IoU 1
    CHECK(rep.binary_iou == doctest::Approx(1.0));
  }
  SUBCASE("unknown gt voxels are excluded from the tallies") {
    const auto pred = flat_grid({1, 2, 1}, 3);
    const auto gt = flat_grid({1, 255, 1}, 3);
    const auto rep = iou_miou(pred, gt);
    CHECK(rep.per_class[1] == doctest::Approx(1.0));
    CHECK(std::isnan(rep.per_class[2]));  // absent once the 255 voxel is dropped
  }
  SUBCASE("classes absent from both grids stay out of the mean") {
    const auto pred = flat_grid({1, 1}, 5);
    const auto gt = flat_grid({1, 1}, 5);
    const auto rep = iou_miou(pred, gt);
    CHECK(rep.miou == doctest::Approx(1.0));
  }
  SUBCASE("dim mismatch") {
    CHECK_THROWS_AS(iou_miou(flat_grid({0}, 2), flat_grid({0, 0}, 2)), DimMismatch);
  }
}

TEST_CASE("cross_entropy") {
  SUBCASE("confident-correct limit") {
    const double ce = cross_entropy({{1e6, 0.0, 0.0}}, {0});
    CHECK(ce == doctest::Approx(0.0).epsilon(1e-9));
  }
  SUBCASE("uniform logits give ln K") {
    const double ce = cross_entropy({{0.3, 0.3, 0.3, 0.3, 0.3}}, {2});
    CHECK(ce == doctest::Approx(std::log(5.0)));
  }
  SUBCASE("two-class hand case") {
    const double ce = cross_entropy({{1.0, 0.0}}, {0});
    CHECK(ce == doctest::Approx(std::log(1.0 + std::exp(-1.0))).epsilon(1e-9));
  }
  SUBCASE("invariant to per-voxel logit shifts") {
    const double a = cross_entropy({{1.0, -0.5, 2.0}, {0.0, 0.1, 0.2}}, {2, 1});
    const double b = cross_entropy({{101.0, 99.5, 102.0}, {-7.0, -6.9, -6.8}}, {2, 1});
    CHECK(a == doctest::Approx(b).epsilon(1e-9));
  }
  SUBCASE("masked voxels are skipped; all masked throws") {
    const double ce = cross_entropy({{1.0, 0.0}, {5.0, 5.0}}, {0, 255});
    CHECK(ce == doctest::Approx(std::log(1.0 + std::exp(-1.0))).epsilon(1e-9));
    CHECK_THROWS_AS(cross_entropy({{1.0, 0.0}}, {255}), AllMasked);
  }
}

TEST_CASE("lovasz_softmax") {
  SUBCASE("perfect hard prediction scores 0") {
    const std::vector<std::vector<double>> probs = {{1, 0}, {0, 1}, {1, 0}};
    CHECK(lovasz_softmax(probs, {0, 1, 0}) == doctest::Approx(0.0));
  }
  SUBCASE("hand case checked against the superlevel-set oracle") {
    // 3 voxels, classes {0 = background, 1 = c}; p(c) = 0.9, 0.4, 0.2.
    const std::vector<std::vector<double>> probs = {{0.1, 0.9}, {0.6, 0.4}, {0.8, 0.2}};
    const std::vector<std::uint8_t> labels = {1, 1, 0};
    const double loss = lovasz_softmax(probs, labels);
    const double oracle = lovasz_softmax_oracle(probs, labels);
    CHECK(loss == doctest::Approx(oracle).epsilon(1e-12));
    // Class-1 term alone, integrated by hand: 0.36667 (see the oracle).
    const double c1 = lovasz_extension_oracle({0.1, 0.6, 0.2}, {true, true, false});
    CHECK(c1 == doctest::Approx(11.0 / 30.0).epsilon(1e-12));
  }
  SUBCASE("hard one-hot predictions reduce to 1 - IoU per class") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> cls(0, 3);
    for (int trial = 0; trial < 50; ++trial) {
      const int n = 4 + int(rng() % 60);
      std::vector<std::uint8_t> pred_labels(n), gt_labels(n);
      std::vector<std::vector<double>> probs(n, std::vector<double>(4, 0.0));
      for (int i = 0; i < n; ++i) {
        pred_labels[i] = std::uint8_t(cls(rng));
        gt_labels[i] = std::uint8_t(cls(rng));
        probs[i][pred_labels[i]] = 1.0;
      }
      const double loss = lovasz_softmax(probs, gt_labels);
      const auto rep = iou_miou(flat_grid(pred_labels, 4), flat_grid(gt_labels, 4));
      std::set<std::uint8_t> present(gt_labels.begin(), gt_labels.end());
      double expect = 0.0;
      for (std::uint8_t c : present) expect += 1.0 - rep.per_class[c];
      expect /= double(present.size());
      CHECK(loss == doctest::Approx(expect).epsilon(1e-6));
    }
  }
  SUBCASE("random soft predictions match the exhaustive oracle at n <= 8") {
    std::mt19937 rng(37);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 2 + int(rng() % 7);
      const int k = 2 + int(rng() % 3);
      std::vector<std::vector<double>> probs(n, std::vector<double>(k));
      std::vector<std::uint8_t> labels(n);
      for (int i = 0; i < n; ++i) {
        double sum = 0.0;
        for (int c = 0; c < k; ++c) {
          probs[i][c] = u(rng) + 1e-3;
          sum += probs[i][c];
        }
        for (int c = 0; c < k; ++c) probs[i][c] /= sum;
        labels[i] = std::uint8_t(rng() % k);
      }
      CHECK(lovasz_softmax(probs, labels) ==
            doctest::Approx(lovasz_softmax_oracle(probs, labels)).epsilon(1e-9));
    }
  }
  SUBCASE("unnormalized rows throw") {
    CHECK_THROWS_AS(lovasz_softmax({{0.5, 0.6}}, {0}), NotNormalized);
  }
}

TEST_CASE("kl_diag_gauss") {
  CHECK(kl_diag_gauss({{0.0}}, {{0.0}}) == doctest::Approx(0.0));
  CHECK(kl_diag_gauss({{1.0}}, {{0.0}}) == doctest::Approx(0.5));
  CHECK(kl_diag_gauss({{0.0}}, {{std::log(4.0)}}) ==
        doctest::Approx(0.5 * (4.0 - std::log(4.0) - 1.0)));
  // mean over batch rows
  CHECK(kl_diag_gauss({{1.0}, {0.0}}, {{0.0}, {0.0}}) == doctest::Approx(0.25));
}

TEST_CASE("masked_mse and noise_pred_loss") {
  auto pred = occdiff::LatentVolume::zeros(2, 1, 1, 2);
  auto target = occdiff::LatentVolume::zeros(2, 1, 1, 2);

  SUBCASE("only unmasked frames count") {
    // frame 0 squared error 5, frame 1 squared error 2
    pred.values = {2.0, 1.0, 1.0, 1.0};
    target.values = {0.0, 0.0, 0.0, 0.0};
    CHECK(masked_mse(pred, target, {1.0, 0.0}) == doctest::Approx(2.0));
    CHECK(masked_mse(pred, target, {0.0, 0.0}) == doctest::Approx(3.5));
  }
  SUBCASE("equal volumes lose nothing") {
    CHECK(masked_mse(pred, pred, {0.0, 0.0}) == doctest::Approx(0.0));
  }
  SUBCASE("all-masked throws") {
    CHECK_THROWS_AS(masked_mse(pred, target, {1.0, 1.0}), AllMasked);
  }
  SUBCASE("noise prediction loss") {
    CHECK(noise_pred_loss(pred, pred) == doctest::Approx(0.0));
    auto eps = occdiff::LatentVolume::zeros(1, 1, 1, 2);
    auto hat = occdiff::LatentVolume::zeros(1, 1, 1, 2);
    eps.values = {std::sqrt(0.5), std::sqrt(0.5)};  // unit-norm frame
    CHECK(noise_pred_loss(hat, eps) == doctest::Approx(1.0));
    // two frames: mean of the squared norms
    auto e2 = occdiff::LatentVolume::zeros(2, 1, 1, 2);
    auto h2 = occdiff::LatentVolume::zeros(2, 1, 1, 2);
    e2.values = {1.0, 2.0, 3.0, 0.0};
    CHECK(noise_pred_loss(h2, e2) == doctest::Approx(0.5 * (5.0 + 9.0)));
  }
}

TEST_CASE("lidar_loss") {
  SUBCASE("exact predictions score 0") {
    const auto out = lidar_loss({1.0, 2.0}, {1.0, 2.0}, {0.5, 0.5}, {0.5, 0.5}, {-50.0, 50.0},
                                {0, 1});
    CHECK(out.total == doctest::Approx(0.0).epsilon(1e-9));
  }
  SUBCASE("lambda zero leaves the pure depth term") {
    const auto out =
        lidar_loss({1.0, 2.0}, {0.0, 0.0}, {0.9, 0.1}, {0.0, 0.0}, {0.0, 0.0}, {0, 1}, 0.0, 0.0);
    CHECK(out.total == doctest::Approx(1.5));
  }
  SUBCASE("hand-evaluated composite") {
    // depth errors (1, 3), intensity errors (0.5, 0.5), drop logits 0 vs
    // flags (0, 1): BCE = ln 2 per ray.
    const auto out = lidar_loss({1.0, 3.0}, {0.0, 0.0}, {0.5, 0.5}, {0.0, 0.0}, {0.0, 0.0},
                                {0, 1}, 1.0, 1.0);
    CHECK(out.depth_l1 == doctest::Approx(2.0));
    CHECK(out.intensity_l1 == doctest::Approx(0.5));
    CHECK(out.drop_bce == doctest::Approx(std::log(2.0)));
    CHECK(out.total == doctest::Approx(2.0 + 0.5 + std::log(2.0)));
  }
  SUBCASE("shape mismatch") {
    CHECK_THROWS_AS(lidar_loss({1.0}, {1.0, 2.0}, {0}, {0}, {0}, {0}), ShapeMismatch);
  }
}

TEST_CASE("bev_histogram") {
  SUBCASE("empty cloud") {
    const auto h = bev_histogram({}, 10, 10, -5, 5, -5, 5);
    for (auto c : h.counts) CHECK(c == 0);
    CHECK(h.total == 0);
  }
  SUBCASE("center point lands in the center bin") {
    const auto h = bev_histogram({Eigen::Vector3f(0.0f, 0.0f, 1.0f)}, 10, 10, -5, 5, -5, 5);
    CHECK(h.counts[std::size_t(5) * 10 + 5] == 1);
    CHECK(h.total == 1);
  }
  SUBCASE("conservation: counted + discarded = input size") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<float> u(-8.0f, 8.0f);
    std::vector<Eigen::Vector3f> pts(500);
    for (auto& p : pts) p = {u(rng), u(rng), 0.0f};
    const auto h = bev_histogram(pts, 7, 9, -5, 5, -5, 5);
    std::uint64_t counted = 0;
    for (auto c : h.counts) counted += c;
    CHECK(counted == h.total);
    CHECK(h.total + h.discarded == 500);
  }
  SUBCASE("upper edges are exclusive except the final bin") {
    const auto h = bev_histogram({Eigen::Vector3f(5.0f, 5.0f, 0.0f),
                                  Eigen::Vector3f(1.0f, 1.0f, 0.0f)},
                                 5, 5, 0, 5, 0, 5);
    CHECK(h.counts[std::size_t(4) * 5 + 4] == 1);  // x = x_max joins the last bin
    CHECK(h.counts[std::size_t(1) * 5 + 1] == 1);  // interior edge goes right
  }
}

TEST_CASE("mmd") {
  SUBCASE("identical sets vanish") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<float> u(0.0f, 5.0f);
    std::vector<BevHistogram> set;
    for (int i = 0; i < 4; ++i) {
      std::vector<Eigen::Vector3f> pts(50);
      for (auto& p : pts) p = {u(rng), u(rng), 0.0f};
      set.push_back(bev_histogram(pts, 5, 5, 0, 5, 0, 5));
    }
    CHECK(mmd(set, set, 1.0) <= 1e-9);
  }
  SUBCASE("symmetric") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<float> u(0.0f, 5.0f);
    std::vector<BevHistogram> a, b;
    for (int i = 0; i < 3; ++i) {
      std::vector<Eigen::Vector3f> pa(30), pb(40);
      for (auto& p : pa) p = {u(rng), u(rng), 0.0f};
      for (auto& p : pb) p = {u(rng) * 0.5f, u(rng), 0.0f};
      a.push_back(bev_histogram(pa, 5, 5, 0, 5, 0, 5));
      b.push_back(bev_histogram(pb, 5, 5, 0, 5, 0, 5));
    }
    CHECK(mmd(a, b, 0.8) == doctest::Approx(mmd(b, a, 0.8)).epsilon(1e-12));
    CHECK(mmd(a, b, 0.8) >= 0.0);
  }
  SUBCASE("singleton impulses follow the closed form") {
    // Impulses one bin apart; bin width 1 so the center distance is 1.
    const auto a = impulse_hist(0.5, 0.5);
    const auto b = impulse_hist(1.5, 0.5);
    for (double sigma : {0.7, 2.0}) {
      const double expect = 2.0 * (1.0 - std::exp(-1.0 / (2.0 * sigma * sigma)));
      CHECK(mmd({a}, {b}, sigma) == doctest::Approx(expect).epsilon(1e-9));
    }
    CHECK(mmd({a}, {a}, 1.0) == doctest::Approx(0.0));
  }
  SUBCASE("bin mismatch") {
    const auto a = impulse_hist(0.5, 0.5);
    const auto b = bev_histogram({Eigen::Vector3f(0.5f, 0.5f, 0)}, 4, 5, 0, 5, 0, 5);
    CHECK_THROWS_AS(mmd({a}, {b}, 1.0), BinMismatch);
  }
}

TEST_CASE("jsd") {
  SUBCASE("identical histograms") {
    const auto h = impulse_hist(2.5, 2.5);
    CHECK(jsd(h, h) == doctest::Approx(0.0));
  }
  SUBCASE("disjoint impulses reach ln 2") {
    CHECK(jsd(impulse_hist(0.5, 0.5), impulse_hist(4.5, 4.5)) == doctest::Approx(std::log(2.0)));
  }
  SUBCASE("hand-evaluated two-bin case") {
    // P = (0.5, 0.5), Q = (1, 0) over two occupied bins.
    const auto p = bev_histogram(
        {Eigen::Vector3f(0.5f, 0.5f, 0), Eigen::Vector3f(1.5f, 0.5f, 0)}, 5, 5, 0, 5, 0, 5);
    const auto q = bev_histogram(
        {Eigen::Vector3f(0.5f, 0.5f, 0), Eigen::Vector3f(0.5f, 0.5f, 0)}, 5, 5, 0, 5, 0, 5);
    // 0.5 ln(0.5/0.75)/... direct: 0.5*[0.5 ln(0.5/0.75) + 0.5 ln(0.5/0.25)]
    //                            + 0.5*[1 ln(1/0.75)]
    const double expect = 0.5 * (0.5 * std::log(0.5 / 0.75) + 0.5 * std::log(0.5 / 0.25)) +
                          0.5 * (1.0 * std::log(1.0 / 0.75));
    CHECK(jsd(p, q) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(expect == doctest::Approx(0.2158).epsilon(1e-3));
    CHECK(jsd(p, q) == doctest::Approx(jsd(q, p)).epsilon(1e-12));
  }
  SUBCASE("empty histogram is not normalized") {
    const auto h = impulse_hist(0.5, 0.5);
    const auto empty = bev_histogram({}, 5, 5, 0, 5, 0, 5);
    CHECK_THROWS_AS(jsd(h, empty), NotNormalized);
  }
}

TEST_CASE("losses are permutation invariant over voxels") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int n = 20;
  std::vector<std::vector<double>> probs(n, std::vector<double>(3));
  std::vector<std::vector<double>> logits(n, std::vector<double>(3));
  std::vector<std::uint8_t> labels(n);
  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    for (int c = 0; c < 3; ++c) {
      probs[i][c] = u(rng) + 0.01;
      sum += probs[i][c];
      logits[i][c] = u(rng) * 4.0 - 2.0;
    }
    for (int c = 0; c < 3; ++c) probs[i][c] /= sum;
    labels[i] = std::uint8_t(rng() % 3);
  }
  const double ce = cross_entropy(logits, labels);
  const double ls = lovasz_softmax(probs, labels);

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::vector<double>> probs_p(n), logits_p(n);
  std::vector<std::uint8_t> labels_p(n);
  for (int i = 0; i < n; ++i) {
    probs_p[i] = probs[perm[i]];
    logits_p[i] = logits[perm[i]];
    labels_p[i] = labels[perm[i]];
  }
  CHECK(cross_entropy(logits_p, labels_p) == doctest::Approx(ce).epsilon(1e-12));
  CHECK(lovasz_softmax(probs_p, labels_p) == doctest::Approx(ls).epsilon(1e-12));
}
