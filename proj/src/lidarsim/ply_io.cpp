// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#include "occscene/lidarsim/ply_io.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

#include "occscene/core/errors.hpp"

namespace occscene::lidarsim {

void save_ply(const std::string& path, const LidarPointCloud& cloud, bool include_dropped) {
  std::vector<const LidarReturn*> rows;
  rows.reserve(cloud.returns.size());
  for (const auto& r : cloud.returns) {
    if (r.miss) continue;
    if (r.dropped && !include_dropped) continue;
    rows.push_back(&r);
  }

  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for writing: " + path);
  f << "ply\nformat binary_little_endian 1.0\n"
    << "element vertex " << rows.size() << "\n"
    << "property float x\nproperty float y\nproperty float z\n"
    << "property float intensity\nproperty float drop_prob\n"
    << "property uchar dropped\nend_header\n";
  for (const auto* r : rows) {
    const float xyz[3] = {float(r->point.x()), float(r->point.y()), float(r->point.z())};
    f.write(reinterpret_cast<const char*>(xyz), 12);
    f.write(reinterpret_cast<const char*>(&r->intensity), 4);
    f.write(reinterpret_cast<const char*>(&r->drop_prob), 4);
    const std::uint8_t d = r->dropped ? 1 : 0;
    f.write(reinterpret_cast<const char*>(&d), 1);
  }
  if (!f) throw IoError("write failed: " + path);
}

void save_voxel_ply(const std::string& path, const std::vector<PlyPoint>& points) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for writing: " + path);
  f << "ply\nformat binary_little_endian 1.0\n"
    << "element vertex " << points.size() << "\n"
    << "property float x\nproperty float y\nproperty float z\n"
    << "property uchar label\nend_header\n";
  for (const auto& p : points) {
    const float xyz[3] = {p.x, p.y, p.z};
    f.write(reinterpret_cast<const char*>(xyz), 12);
    f.write(reinterpret_cast<const char*>(&p.label), 1);
  }
  if (!f) throw IoError("write failed: " + path);
}

std::vector<PlyPoint> load_ply(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open: " + path);
  std::string line;
  if (!std::getline(f, line) || line != "ply") throw BadMagic(path + ": not a PLY file");

  std::size_t count = 0;
  bool binary_le = false;
  struct Prop {
    std::string name;
    bool is_uchar = false;
  };
  std::vector<Prop> props;
  while (std::getline(f, line)) {
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    if (tok == "format") {
      std::string fmt;
      ls >> fmt;
      binary_le = fmt == "binary_little_endian";
    } else if (tok == "element") {
      std::string what;
      ls >> what >> count;
      if (what != "vertex")
        throw VersionUnsupported(path + ": only vertex elements supported");
    } else if (tok == "property") {
      std::string type, name;
      ls >> type >> name;
      if (type != "float" && type != "float32" && type != "uchar" && type != "uint8")
        throw VersionUnsupported(path + ": unsupported property type " + type);
      props.push_back({name, type == "uchar" || type == "uint8"});
    } else if (tok == "end_header") {
      break;
    }
  }
  if (!binary_le) throw VersionUnsupported(path + ": expected binary_little_endian PLY");

  std::vector<PlyPoint> pts(count);
  for (std::size_t i = 0; i < count; ++i) {
    for (const auto& prop : props) {
      float fv = 0.0f;
      std::uint8_t bv = 0;
      if (prop.is_uchar) {
        f.read(reinterpret_cast<char*>(&bv), 1);
        fv = float(bv);
      } else {
        f.read(reinterpret_cast<char*>(&fv), 4);
      }
      if (!f) throw TruncatedPayload(path + ": truncated PLY payload");
      if (prop.name == "x")
        pts[i].x = fv;
      else if (prop.name == "y")
        pts[i].y = fv;
      else if (prop.name == "z")
        pts[i].z = fv;
      else if (prop.name == "intensity")
        pts[i].intensity = fv;
      else if (prop.name == "drop_prob")
        pts[i].drop_prob = fv;
      else if (prop.name == "dropped")
        pts[i].dropped = bv;
      else if (prop.name == "label")
        pts[i].label = bv;
      // Other properties are consumed and ignored.
    }
  }
  return pts;
}

}  // namespace occscene::lidarsim
