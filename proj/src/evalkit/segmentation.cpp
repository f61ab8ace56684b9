// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#include "occscene/evalkit/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "occscene/core/errors.hpp"

namespace occscene::evalkit {

ConfusionTally& ConfusionTally::merge(const ConfusionTally& other) {
  if (other.num_classes != num_classes) throw DimMismatch("tally class counts differ");
  for (std::uint32_t c = 0; c < num_classes; ++c) {
    tp[c] += other.tp[c];
    fp[c] += other.fp[c];
    fn[c] += other.fn[c];
  }
  return *this;
}

IouReport iou_miou(const voxgrid::SemanticOccupancyGrid& pred,
                   const voxgrid::SemanticOccupancyGrid& gt) {
  if (pred.dims != gt.dims)
    throw DimMismatch("prediction and ground-truth grids have different dims");
  const std::uint32_t classes = std::max(pred.num_classes, gt.num_classes);

  IouReport rep;
  rep.tally = ConfusionTally(classes);
  std::uint64_t bin_tp = 0, bin_fp = 0, bin_fn = 0;
  for (std::size_t v = 0; v < gt.labels.size(); ++v) {
    const std::uint8_t g = gt.labels[v];
    if (g == voxgrid::kUnknownLabel) continue;
    const std::uint8_t p = pred.labels[v];
    if (p == g) {
      ++rep.tally.tp[g];
    } else {
      ++rep.tally.fn[g];
      if (p != voxgrid::kUnknownLabel) ++rep.tally.fp[p];
    }
    const bool po = p != 0 && p != voxgrid::kUnknownLabel;
    const bool go = g != 0;
    if (po && go)
      ++bin_tp;
    else if (po && !go)
      ++bin_fp;
    else if (!po && go)
      ++bin_fn;
  }

  rep.per_class.assign(classes, std::numeric_limits<double>::quiet_NaN());
  double miou_sum = 0.0;
  std::uint32_t miou_count = 0;
  for (std::uint32_t c = 0; c < classes; ++c) {
    const std::uint64_t denom = rep.tally.tp[c] + rep.tally.fp[c] + rep.tally.fn[c];
    if (denom == 0) continue;  // absent from both grids
    rep.per_class[c] = double(rep.tally.tp[c]) / double(denom);
    if (c >= 1) {  // semantic classes only; 0 is free space
      miou_sum += rep.per_class[c];
      ++miou_count;
    }
  }
  rep.miou = miou_count == 0 ? 0.0 : miou_sum / miou_count;
  const std::uint64_t bin_denom = bin_tp + bin_fp + bin_fn;
  rep.binary_iou = bin_denom == 0 ? 1.0 : double(bin_tp) / double(bin_denom);
  return rep;
}

double cross_entropy(const std::vector<std::vector<double>>& logits,
                     const std::vector<std::uint8_t>& labels) {
  if (logits.size() != labels.size())
    throw ShapeMismatch("cross entropy: logit and label counts differ");
  double sum = 0.0;
  std::size_t counted = 0;
  for (std::size_t v = 0; v < labels.size(); ++v) {
    if (labels[v] == voxgrid::kUnknownLabel) continue;
    const auto& row = logits[v];
    if (labels[v] >= row.size())
      throw LabelOutOfRange("cross entropy: label exceeds logit width");
    const double mx = *std::max_element(row.begin(), row.end());
    if (!std::isfinite(mx)) throw InvalidArgument("cross entropy: non-finite logits");
    double lse = 0.0;
    for (double l : row) lse += std::exp(l - mx);
    sum += std::log(lse) - (row[labels[v]] - mx);
    ++counted;
  }
  if (counted == 0) throw AllMasked("cross entropy: every voxel is masked");
  return sum / double(counted);
}

namespace {

// Lovasz extension gradient of the Jaccard set function for one class,
// evaluated along the descending error order.
double lovasz_class_loss(const std::vector<double>& errors, const std::vector<bool>& is_gt) {
  const std::size_t n = errors.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return errors[a] > errors[b]; });

  std::uint64_t gts = 0;
  for (bool g : is_gt) gts += g ? 1 : 0;

  double loss = 0.0;
  std::uint64_t inter = gts, uni = gts;
  double prev_jaccard = 0.0;  // jaccard loss of the empty mislabel set
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t i = order[r];
    if (is_gt[i])
      --inter;
    else
      ++uni;
    const double jaccard = 1.0 - double(inter) / double(uni);
    loss += errors[i] * (jaccard - prev_jaccard);
    prev_jaccard = jaccard;
  }
  return loss;
}

}  // namespace

double lovasz_softmax(const std::vector<std::vector<double>>& probs,
                      const std::vector<std::uint8_t>& labels) {
  if (probs.size() != labels.size())
    throw ShapeMismatch("lovasz: prob and label counts differ");

  std::vector<std::size_t> kept;
  for (std::size_t v = 0; v < labels.size(); ++v) {
    if (labels[v] == voxgrid::kUnknownLabel) continue;
    double rowsum = 0.0;
    for (double p : probs[v]) rowsum += p;
    if (std::abs(rowsum - 1.0) > 1e-6)
      throw NotNormalized("lovasz: probability row " + std::to_string(v) + " sums to " +
                          std::to_string(rowsum));
    kept.push_back(v);
  }
  if (kept.empty()) throw AllMasked("lovasz: every voxel is masked");

  std::set<std::uint8_t> present(labels.begin(), labels.end());
  present.erase(voxgrid::kUnknownLabel);

  double total = 0.0;
  for (std::uint8_t c : present) {
    std::vector<double> errors(kept.size());
    std::vector<bool> is_gt(kept.size());
    for (std::size_t r = 0; r < kept.size(); ++r) {
      const std::size_t v = kept[r];
      if (c >= probs[v].size()) throw LabelOutOfRange("lovasz: label exceeds prob width");
      const double pc = probs[v][c];
      is_gt[r] = labels[v] == c;
      errors[r] = is_gt[r] ? 1.0 - pc : pc;
    }
    total += lovasz_class_loss(errors, is_gt);
  }
  return total / double(present.size());
}

double kl_diag_gauss(const std::vector<std::vector<double>>& mu,
                     const std::vector<std::vector<double>>& logvar) {
  if (mu.size() != logvar.size()) throw ShapeMismatch("kl: batch sizes differ");
  if (mu.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t b = 0; b < mu.size(); ++b) {
    if (mu[b].size() != logvar[b].size()) throw ShapeMismatch("kl: row sizes differ");
    double row = 0.0;
    for (std::size_t d = 0; d < mu[b].size(); ++d) {
      const double m = mu[b][d], lv = logvar[b][d];
      if (!std::isfinite(m) || !std::isfinite(lv))
        throw InvalidArgument("kl: non-finite inputs");
      row += m * m + std::exp(lv) - lv - 1.0;
    }
    sum += 0.5 * row;
  }
  return sum / double(mu.size());
}

}  // namespace occscene::evalkit
