// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#include <cstdlib>
#include <fstream>
#include <thread>

#include "cli.hpp"
#include "occscene/core/errors.hpp"

namespace occscene::cli {

void CommonOpts::attach(CLI::App* cmd) {
  cmd->add_option("--seed", seed, "RNG seed")->default_val(std::uint64_t{0});
  cmd->add_option("--threads", threads,
                  "worker threads (default: OCCSCENE_THREADS or 1); never changes outputs");
}

int CommonOpts::resolved_threads() const {
  if (threads > 0) return threads;
  if (const char* env = std::getenv("OCCSCENE_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

void write_manifest(const std::string& path, const RunManifest& manifest) {
  nlohmann::ordered_json j;
  j["tool"] = "occscene";
  j["version"] = kToolVersion;
  j["command"] = manifest.command;
  j["seed"] = manifest.seed;
  j["parameters"] = manifest.parameters;
  j["inputs"] = manifest.inputs;
  j["outputs"] = manifest.outputs;
  j["duration_seconds"] = manifest.duration_seconds;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write manifest: " + path);
  f << j.dump(2) << "\n";
}

}  // namespace occscene::cli
