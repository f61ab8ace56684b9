// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#include "occscene/occdiff/ddim.hpp"

#include <cmath>

#include "occscene/core/errors.hpp"

namespace occscene::occdiff {
namespace {

// Uniformly strided sub-schedule tau_1 < ... < tau_S with tau_S = steps.
std::vector<std::uint32_t> stride_schedule(std::uint32_t steps, std::uint32_t num_steps) {
  std::vector<std::uint32_t> tau(num_steps);
  for (std::uint32_t j = 0; j < num_steps; ++j)
    tau[j] = std::uint32_t((std::uint64_t(j + 1) * steps) / num_steps);
  return tau;
}

LatentVolume predict_eps(const Denoiser& denoiser, const LatentVolume& x, std::uint32_t step,
                         const Condition& condition, double guidance) {
  if (guidance == 1.0) return denoiser.predict(x, step, condition);
  // Condition dropped for the unconditional branch when g != 1.
  const LatentVolume eps_cond = denoiser.predict(x, step, condition);
  const LatentVolume eps_uncond = denoiser.predict(x, step, Condition::none());
  return cfg_mix(eps_cond, eps_uncond, guidance);
}

// One deterministic DDIM move between schedule steps (either direction):
//   x_to = sqrt(abar_to) * (x - sqrt(1 - abar_from) * eps) / sqrt(abar_from)
//        + sqrt(1 - abar_to) * eps
void ddim_move(LatentVolume& x, const LatentVolume& eps, double abar_from, double abar_to) {
  const double a = std::sqrt(abar_to / abar_from);
  const double b = std::sqrt(1.0 - abar_to) - a * std::sqrt(1.0 - abar_from);
  for (std::size_t i = 0; i < x.values.size(); ++i)
    x.values[i] = a * x.values[i] + b * eps.values[i];
}

}  // namespace

LatentVolume cfg_mix(const LatentVolume& eps_cond, const LatentVolume& eps_uncond, double g) {
  if (eps_cond.frames != eps_uncond.frames || eps_cond.channels != eps_uncond.channels ||
      eps_cond.height != eps_uncond.height || eps_cond.width != eps_uncond.width)
    throw ShapeMismatch("cfg_mix: prediction shapes differ");
  if (g == 1.0) return eps_cond;  // exact, not just up to round-off
  LatentVolume out = eps_uncond;
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] += g * (eps_cond.values[i] - eps_uncond.values[i]);
  return out;
}

LatentVolume ddim_sample(const Denoiser& denoiser, const LatentVolume& z_t,
                         const Condition& condition, const NoiseSchedule& schedule,
                         std::uint32_t num_steps, double guidance) {
  z_t.validate();
  if (num_steps > schedule.steps)
    throw StepRange("num_steps " + std::to_string(num_steps) + " exceeds schedule steps " +
                    std::to_string(schedule.steps));
  if (num_steps == 0) return z_t;

  const auto tau = stride_schedule(schedule.steps, num_steps);
  LatentVolume x = z_t;
  for (std::uint32_t j = num_steps; j-- > 0;) {
    const std::uint32_t t = tau[j];
    const std::uint32_t t_prev = j == 0 ? 0 : tau[j - 1];
    const LatentVolume eps = predict_eps(denoiser, x, t, condition, guidance);
    ddim_move(x, eps, schedule.alpha_bar_at(t), schedule.alpha_bar_at(t_prev));
  }
  return x;
}

LatentVolume ddim_invert(const Denoiser& denoiser, const LatentVolume& z_0,
                         const Condition& condition, const NoiseSchedule& schedule,
                         std::uint32_t num_steps) {
  z_0.validate();
  if (num_steps > schedule.steps)
    throw StepRange("num_steps " + std::to_string(num_steps) + " exceeds schedule steps " +
                    std::to_string(schedule.steps));
  if (num_steps == 0) return z_0;

  const auto tau = stride_schedule(schedule.steps, num_steps);
  LatentVolume x = z_0;
  for (std::uint32_t j = 0; j < num_steps; ++j) {
    const std::uint32_t t_prev = j == 0 ? 0 : tau[j - 1];
    const std::uint32_t t = tau[j];
    const LatentVolume eps = predict_eps(denoiser, x, t, condition, 1.0);
    ddim_move(x, eps, schedule.alpha_bar_at(t_prev), schedule.alpha_bar_at(t));
  }
  return x;
}

LatentVolume edit_pipeline(const LatentVolume& z_ori, const voxgrid::BevLayout& layout_ori,
                           const voxgrid::BevLayout& layout_new, const Denoiser& denoiser,
                           const NoiseSchedule& schedule, std::uint32_t num_steps,
                           double guidance) {
  const Condition cond_ori = layout_condition(layout_ori, z_ori.height, z_ori.width);
  const Condition cond_new = layout_condition(layout_new, z_ori.height, z_ori.width);
  const LatentVolume eps_ori = ddim_invert(denoiser, z_ori, cond_ori, schedule, num_steps);
  return ddim_sample(denoiser, eps_ori, cond_new, schedule, num_steps, guidance);
}

}  // namespace occscene::occdiff
