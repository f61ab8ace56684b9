// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "cli.hpp"
#include "occscene/core/errors.hpp"

namespace occscene::cli {

int dispatch(int argc, const char* const* argv) {
  CLI::App app{"occupancy-centric scene generation toolkit"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  register_convert(app);
  register_render(app);
  register_warp(app);
  register_lidar(app);
  register_raycast_oracle(app);
  register_edit(app);
  register_metrics(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help() << std::flush;
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace occscene::cli
