// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#include "occscene/voxgrid/codec.hpp"

#include <cstring>
#include <fstream>

#include "occscene/core/errors.hpp"

namespace occscene::voxgrid {
namespace {

// Little-endian scalar writer/reader. The formats are defined little-endian;
// we assemble bytes explicitly so the codec is host-order independent.
void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(std::uint8_t(v & 0xff));
  out.push_back(std::uint8_t((v >> 8) & 0xff));
  out.push_back(std::uint8_t((v >> 16) & 0xff));
  out.push_back(std::uint8_t((v >> 24) & 0xff));
}

void put_f32(std::vector<std::uint8_t>& out, float v) {
  std::uint32_t bits;
  std::memcpy(&bits, &v, 4);
  put_u32(out, bits);
}

class Reader {
 public:
  Reader(const std::vector<std::uint8_t>& bytes, const char* what)
      : bytes_(bytes), what_(what) {}

  std::uint32_t u32() {
    need(4);
    std::uint32_t v = std::uint32_t(bytes_[pos_]) | (std::uint32_t(bytes_[pos_ + 1]) << 8) |
                      (std::uint32_t(bytes_[pos_ + 2]) << 16) |
                      (std::uint32_t(bytes_[pos_ + 3]) << 24);
    pos_ += 4;
    return v;
  }
  float f32() {
    std::uint32_t bits = u32();
    float v;
    std::memcpy(&v, &bits, 4);
    return v;
  }
  void magic(const char* expect) {
    need(4);
    if (std::memcmp(bytes_.data() + pos_, expect, 4) != 0)
      throw BadMagic(std::string(what_) + ": bad magic, expected \"" + expect + "\"");
    pos_ += 4;
  }
  const std::uint8_t* payload(std::size_t n) {
    need(n);
    const std::uint8_t* p = bytes_.data() + pos_;
    pos_ += n;
    return p;
  }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  void need(std::size_t n) {
    if (bytes_.size() - pos_ < n)
      throw TruncatedPayload(std::string(what_) + ": truncated, need " + std::to_string(n) +
                             " more bytes, have " + std::to_string(bytes_.size() - pos_));
  }
  const std::vector<std::uint8_t>& bytes_;
  const char* what_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> encode_svo(const SemanticOccupancyGrid& grid) {
  grid.validate();
  std::vector<std::uint8_t> out;
  out.reserve(41 + grid.voxel_count() - 1);
  out.insert(out.end(), {'S', 'V', 'O', 'C'});
  put_u32(out, 1);
  put_u32(out, grid.dims[0]);
  put_u32(out, grid.dims[1]);
  put_u32(out, grid.dims[2]);
  put_f32(out, grid.voxel_size);
  for (int a = 0; a < 3; ++a) put_f32(out, grid.origin[a]);
  put_u32(out, grid.num_classes);
  out.insert(out.end(), grid.labels.begin(), grid.labels.end());
  return out;
}

SemanticOccupancyGrid decode_svo(const std::vector<std::uint8_t>& bytes) {
  Reader r(bytes, "SVO");
  r.magic("SVOC");
  const std::uint32_t version = r.u32();
  if (version != 1)
    throw VersionUnsupported("SVO: version " + std::to_string(version) + " unsupported");
  SemanticOccupancyGrid grid;
  grid.dims = {r.u32(), r.u32(), r.u32()};
  grid.voxel_size = r.f32();
  for (int a = 0; a < 3; ++a) grid.origin[a] = r.f32();
  grid.num_classes = r.u32();
  const std::size_t n = grid.voxel_count();
  const std::uint8_t* p = r.payload(n);
  grid.labels.assign(p, p + n);
  grid.validate();
  return grid;
}

std::vector<std::uint8_t> encode_bvl(const BevLayout& layout) {
  layout.validate();
  std::vector<std::uint8_t> out;
  out.insert(out.end(), {'B', 'V', 'L', 'C'});
  put_u32(out, 1);
  put_u32(out, layout.dims[0]);
  put_u32(out, layout.dims[1]);
  put_f32(out, layout.cell_size);
  put_f32(out, layout.origin[0]);
  put_f32(out, layout.origin[1]);
  put_u32(out, layout.palette_size);
  out.insert(out.end(), layout.codes.begin(), layout.codes.end());
  return out;
}

BevLayout decode_bvl(const std::vector<std::uint8_t>& bytes) {
  Reader r(bytes, "BVL");
  r.magic("BVLC");
  const std::uint32_t version = r.u32();
  if (version != 1)
    throw VersionUnsupported("BVL: version " + std::to_string(version) + " unsupported");
  BevLayout layout;
  layout.dims = {r.u32(), r.u32()};
  layout.cell_size = r.f32();
  layout.origin[0] = r.f32();
  layout.origin[1] = r.f32();
  layout.palette_size = r.u32();
  const std::size_t n = layout.cell_count();
  const std::uint8_t* p = r.payload(n);
  layout.codes.assign(p, p + n);
  layout.validate();
  return layout;
}

std::vector<std::uint8_t> encode_cemb(const ClassEmbeddingTable& table) {
  table.validate();
  std::vector<std::uint8_t> out;
  out.insert(out.end(), {'C', 'E', 'M', 'B'});
  put_u32(out, 1);
  put_u32(out, table.num_classes);
  put_u32(out, table.embed_dim);
  for (float w : table.weights) put_f32(out, w);
  return out;
}

ClassEmbeddingTable decode_cemb(const std::vector<std::uint8_t>& bytes) {
  Reader r(bytes, "CEMB");
  r.magic("CEMB");
  const std::uint32_t version = r.u32();
  if (version != 1)
    throw VersionUnsupported("CEMB: version " + std::to_string(version) + " unsupported");
  ClassEmbeddingTable table;
  table.num_classes = r.u32();
  table.embed_dim = r.u32();
  const std::size_t n = std::size_t(table.num_classes) * table.embed_dim;
  table.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) table.weights[i] = r.f32();
  table.validate();
  return table;
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for writing: " + path);
  f.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
  if (!f) throw IoError("write failed: " + path);
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary | std::ios::ate);
  if (!f) throw IoError("cannot open: " + path);
  const std::streamsize size = f.tellg();
  f.seekg(0);
  std::vector<std::uint8_t> bytes(static_cast<std::size_t>(size), 0);
  f.read(reinterpret_cast<char*>(bytes.data()), size);
  if (!f) throw IoError("read failed: " + path);
  return bytes;
}

SemanticOccupancyGrid load_svo(const std::string& path) {
  try {
    return decode_svo(read_file(path));
  } catch (const Error& e) {
    throw IoError(path + ": " + e.what());
  }
}

void save_svo(const std::string& path, const SemanticOccupancyGrid& grid) {
  write_file(path, encode_svo(grid));
}

BevLayout load_bvl(const std::string& path) {
  try {
    return decode_bvl(read_file(path));
  } catch (const Error& e) {
    throw IoError(path + ": " + e.what());
  }
}

void save_bvl(const std::string& path, const BevLayout& layout) {
  write_file(path, encode_bvl(layout));
}

ClassEmbeddingTable load_cemb(const std::string& path) {
  try {
    return decode_cemb(read_file(path));
  } catch (const Error& e) {
    throw IoError(path + ": " + e.what());
  }
}

void save_cemb(const std::string& path, const ClassEmbeddingTable& table) {
  write_file(path, encode_cemb(table));
}

}  // namespace occscene::voxgrid
