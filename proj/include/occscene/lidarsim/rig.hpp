// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <cstdint>
#include <string>
#include <vector>

namespace occscene::lidarsim {

struct Ray {
  Eigen::Vector3d origin = Eigen::Vector3d::Zero();
  Eigen::Vector3d direction = Eigen::Vector3d::UnitX();  // unit length
  std::uint32_t row = 0;  // beam index
  std::uint32_t col = 0;  // azimuth index
};

/// Spinning-lidar description. Defaults are nuScenes-like: 32 beams, 1024
/// azimuth steps, elevations -30..+10 degrees, 70 m range.
struct SensorRig {
  std::uint32_t beams = 32;
  std::uint32_t azimuth_steps = 1024;
  double elevation_min_deg = -30.0;
  double elevation_max_deg = 10.0;
  Eigen::Quaterniond mount_rotation = Eigen::Quaterniond::Identity();
  Eigen::Vector3d mount_translation = Eigen::Vector3d::Zero();
  double max_range = 70.0;

  void validate() const;
};

/// beams x azimuth_steps rays: elevations uniformly spaced inclusive over
/// the range (a single beam sits at the minimum), azimuths uniform over
/// [0, 2pi), everything rotated into the world frame by the mount pose.
/// Sensor frame is x-forward / y-left / z-up.
std::vector<Ray> make_rig(const SensorRig& config);

/// key=value rig file: beams, azimuth_steps, elevation_min_deg,
/// elevation_max_deg, max_range, mount_q (qw qx qy qz), mount_t (tx ty tz).
SensorRig load_rig(const std::string& path);
void save_rig(const std::string& path, const SensorRig& rig);

}  // namespace occscene::lidarsim
