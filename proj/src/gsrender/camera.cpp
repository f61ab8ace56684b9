// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#include "occscene/gsrender/camera.hpp"

#include <fstream>
#include <sstream>

#include "occscene/core/errors.hpp"

namespace occscene::gsrender {

void Camera::validate() const {
  if (!(fx > 0.0f) || !(fy > 0.0f)) throw InvalidArgument("camera focal lengths must be > 0");
  if (width < 1 || height < 1) throw InvalidArgument("camera resolution must be >= 1x1");
  const Eigen::Matrix3f rtr = rotation.transpose() * rotation;
  if ((rtr - Eigen::Matrix3f::Identity()).cwiseAbs().maxCoeff() > 1e-5f)
    throw InvalidArgument("camera rotation is not orthonormal");
}

std::vector<Camera> parse_camera_rig(const std::string& text) {
  std::vector<Camera> cams;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    Camera cam;
    float qw, qx, qy, qz;
    if (!(ls >> cam.name)) continue;  // blank line
    if (!(ls >> cam.fx >> cam.fy >> cam.cx >> cam.cy >> cam.width >> cam.height >> qw >> qx >>
          qy >> qz >> cam.translation.x() >> cam.translation.y() >> cam.translation.z()))
      throw InvalidArgument("camera rig line " + std::to_string(line_no) +
                            ": expected \"name fx fy cx cy width height qw qx qy qz tx ty tz\"");
    Eigen::Quaternionf q(qw, qx, qy, qz);
    if (q.norm() < 1e-6f)
      throw InvalidArgument("camera rig line " + std::to_string(line_no) + ": zero quaternion");
    cam.rotation = q.normalized().toRotationMatrix();
    cam.validate();
    cams.push_back(std::move(cam));
  }
  return cams;
}

std::vector<Camera> load_camera_rig(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open camera rig: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  try {
    return parse_camera_rig(ss.str());
  } catch (const Error& e) {
    throw IoError(path + ": " + e.what());
  }
}

}  // namespace occscene::gsrender
