// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <cstdint>
#include <string>
#include <vector>

namespace occscene::gsrender {

/// Pinhole camera. Looks down +z with x right and y down; a world point X
/// maps to camera coordinates p = R * X + t and then to pixel
/// (fx * p.x / p.z + cx, fy * p.y / p.z + cy).
struct Camera {
  std::string name;
  float fx = 1.0f, fy = 1.0f;
  float cx = 0.0f, cy = 0.0f;
  std::uint32_t width = 1, height = 1;
  Eigen::Matrix3f rotation = Eigen::Matrix3f::Identity();  // world-to-camera
  Eigen::Vector3f translation = Eigen::Vector3f::Zero();

  Eigen::Vector3f to_camera(const Eigen::Vector3f& world) const {
    return rotation * world + translation;
  }
  Eigen::Vector2f project(const Eigen::Vector3f& cam) const {
    return {fx * cam.x() / cam.z() + cx, fy * cam.y() / cam.z() + cy};
  }

  void validate() const;  // throws on bad intrinsics or non-orthonormal rotation
};

/// Parses a rig file: one camera per line,
/// "name fx fy cx cy width height qw qx qy qz tx ty tz",
/// where (q, t) is the world-to-camera transform. '#' starts a comment.
std::vector<Camera> load_camera_rig(const std::string& path);
std::vector<Camera> parse_camera_rig(const std::string& text);

}  // namespace occscene::gsrender
