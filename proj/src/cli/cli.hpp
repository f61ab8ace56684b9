// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <CLI11.hpp>
#include <cstdint>
#include <string>

#include "json.hpp"

namespace occscene::cli {

constexpr const char* kToolVersion = "0.1.0";

/// Flags shared by every subcommand.
struct CommonOpts {
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = resolve from OCCSCENE_THREADS, else 1

  void attach(CLI::App* cmd);
  int resolved_threads() const;
};

struct RunManifest {
  std::string command;
  nlohmann::ordered_json parameters;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::uint64_t seed = 0;
  double duration_seconds = 0.0;
};

/// Writes the manifest JSON next to the command outputs.
void write_manifest(const std::string& path, const RunManifest& manifest);

void register_convert(CLI::App& app);
void register_render(CLI::App& app);
void register_warp(CLI::App& app);
void register_lidar(CLI::App& app);
void register_raycast_oracle(CLI::App& app);
void register_edit(CLI::App& app);
void register_metrics(CLI::App& app);

/// Entry point used by main() and the CLI tests. Returns the process exit
/// code: 0 success, 1 usage error, 2 data/validation error.
int dispatch(int argc, const char* const* argv);

}  // namespace occscene::cli
