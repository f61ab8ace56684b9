// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "occscene/voxgrid/embedding.hpp"
#include "occscene/voxgrid/grid.hpp"

namespace occscene::voxgrid {

// Binary formats, all little-endian, version 1:
//   SVO: "SVOC" | version u32 | H,W,D u32 | voxel_size f32 | origin 3xf32
//        | num_classes u32 | H*W*D label bytes (i outer, j middle, k inner)
//   BVL: "BVLC" | version u32 | H,W u32 | cell_size f32 | origin 2xf32
//        | palette_size u32 | H*W code bytes
//   CEMB: "CEMB" | version u32 | num_classes u32 | embed_dim u32
//        | row-major f32 weights

std::vector<std::uint8_t> encode_svo(const SemanticOccupancyGrid& grid);
SemanticOccupancyGrid decode_svo(const std::vector<std::uint8_t>& bytes);

std::vector<std::uint8_t> encode_bvl(const BevLayout& layout);
BevLayout decode_bvl(const std::vector<std::uint8_t>& bytes);

std::vector<std::uint8_t> encode_cemb(const ClassEmbeddingTable& table);
ClassEmbeddingTable decode_cemb(const std::vector<std::uint8_t>& bytes);

// File helpers; errors mention the path.
void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> read_file(const std::string& path);

SemanticOccupancyGrid load_svo(const std::string& path);
void save_svo(const std::string& path, const SemanticOccupancyGrid& grid);
BevLayout load_bvl(const std::string& path);
void save_bvl(const std::string& path, const BevLayout& layout);
ClassEmbeddingTable load_cemb(const std::string& path);
void save_cemb(const std::string& path, const ClassEmbeddingTable& table);

}  // namespace occscene::voxgrid
