// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "occscene/occdiff/denoiser.hpp"
#include "occscene/occdiff/latent.hpp"
#include "occscene/occdiff/schedule.hpp"
#include "occscene/voxgrid/grid.hpp"

namespace occscene::occdiff {

/// Classifier-free guidance blend: eps_uncond + g * (eps_cond - eps_uncond).
LatentVolume cfg_mix(const LatentVolume& eps_cond, const LatentVolume& eps_uncond, double g);

/// Deterministic (eta = 0) DDIM sampling over a uniformly strided
/// sub-schedule of `num_steps` steps. With guidance g != 1 the denoiser is
/// also queried with a null condition and the two predictions are blended
/// via cfg_mix. num_steps = 0 returns z_T unchanged; num_steps beyond the
/// schedule throws StepRange.
LatentVolume ddim_sample(const Denoiser& denoiser, const LatentVolume& z_t,
                         const Condition& condition, const NoiseSchedule& schedule,
                         std::uint32_t num_steps, double guidance = 1.0);

/// Reverse traversal of the same update rule, mapping a clean latent to the
/// noise that would generate it. The denoiser is evaluated at the
/// destination timestep of each up-step.
LatentVolume ddim_invert(const Denoiser& denoiser, const LatentVolume& z_0,
                         const Condition& condition, const NoiseSchedule& schedule,
                         std::uint32_t num_steps);

/// Layout-editing pipeline: invert under the original layout, then sample
/// from that noise under the edited layout.
LatentVolume edit_pipeline(const LatentVolume& z_ori, const voxgrid::BevLayout& layout_ori,
                           const voxgrid::BevLayout& layout_new, const Denoiser& denoiser,
                           const NoiseSchedule& schedule, std::uint32_t num_steps,
                           double guidance = 1.0);

}  // namespace occscene::occdiff
