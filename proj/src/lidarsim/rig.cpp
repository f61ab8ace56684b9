// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#include "occscene/lidarsim/rig.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "occscene/core/errors.hpp"

namespace occscene::lidarsim {

void SensorRig::validate() const {
  if (beams < 1) throw InvalidArgument("rig beams must be >= 1");
  if (azimuth_steps < 1) throw InvalidArgument("rig azimuth_steps must be >= 1");
  if (!(elevation_min_deg <= elevation_max_deg))
    throw InvalidArgument("rig elevation range is inverted");
  if (!(max_range > 0.0)) throw InvalidArgument("rig max_range must be > 0");
}

std::vector<Ray> make_rig(const SensorRig& config) {
  config.validate();
  const double deg = M_PI / 180.0;
  const Eigen::Matrix3d rot = config.mount_rotation.normalized().toRotationMatrix();
  std::vector<Ray> rays;
  rays.reserve(std::size_t(config.beams) * config.azimuth_steps);
  for (std::uint32_t row = 0; row < config.beams; ++row) {
    const double elev =
        config.beams == 1
            ? config.elevation_min_deg * deg
            : (config.elevation_min_deg + (config.elevation_max_deg - config.elevation_min_deg) *
                                              double(row) / double(config.beams - 1)) *
                  deg;
    const double ce = std::cos(elev), se = std::sin(elev);
    for (std::uint32_t col = 0; col < config.azimuth_steps; ++col) {
      const double az = 2.0 * M_PI * double(col) / double(config.azimuth_steps);
      Ray r;
      r.direction = rot * Eigen::Vector3d(ce * std::cos(az), ce * std::sin(az), se);
      r.origin = config.mount_translation;
      r.row = row;
      r.col = col;
      rays.push_back(r);
    }
  }
  return rays;
}

SensorRig load_rig(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open rig config: " + path);
  SensorRig rig;
  std::string line;
  int line_no = 0;
  while (std::getline(f, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(0, eq);
    key.erase(0, key.find_first_not_of(" \t"));
    key.erase(key.find_last_not_of(" \t") + 1);
    std::istringstream val(line.substr(eq + 1));
    bool ok = true;
    if (key == "beams")
      ok = bool(val >> rig.beams);
    else if (key == "azimuth_steps")
      ok = bool(val >> rig.azimuth_steps);
    else if (key == "elevation_min_deg")
      ok = bool(val >> rig.elevation_min_deg);
    else if (key == "elevation_max_deg")
      ok = bool(val >> rig.elevation_max_deg);
    else if (key == "max_range")
      ok = bool(val >> rig.max_range);
    else if (key == "mount_q") {
      double w, x, y, z;
      ok = bool(val >> w >> x >> y >> z);
      if (ok) rig.mount_rotation = Eigen::Quaterniond(w, x, y, z);
    } else if (key == "mount_t") {
      ok = bool(val >> rig.mount_translation.x() >> rig.mount_translation.y() >>
                rig.mount_translation.z());
    } else {
      throw InvalidArgument(path + " line " + std::to_string(line_no) + ": unknown key \"" + key +
                            "\"");
    }
    if (!ok)
      throw InvalidArgument(path + " line " + std::to_string(line_no) + ": bad value for \"" +
                            key + "\"");
  }
  try {
    rig.validate();
  } catch (const Error& e) {
    throw IoError(path + ": " + e.what());
  }
  return rig;
}

void save_rig(const std::string& path, const SensorRig& rig) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open for writing: " + path);
  f << "beams = " << rig.beams << "\n"
    << "azimuth_steps = " << rig.azimuth_steps << "\n"
    << "elevation_min_deg = " << rig.elevation_min_deg << "\n"
    << "elevation_max_deg = " << rig.elevation_max_deg << "\n"
    << "max_range = " << rig.max_range << "\n"
    << "mount_q = " << rig.mount_rotation.w() << " " << rig.mount_rotation.x() << " "
    << rig.mount_rotation.y() << " " << rig.mount_rotation.z() << "\n"
    << "mount_t = " << rig.mount_translation.x() << " " << rig.mount_translation.y() << " "
    << rig.mount_translation.z() << "\n";
  if (!f) throw IoError("write failed: " + path);
}

}  // namespace occscene::lidarsim
