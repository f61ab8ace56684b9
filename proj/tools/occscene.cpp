// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#include "../src/cli/cli.hpp"

int main(int argc, char** argv) { return occscene::cli::dispatch(argc, argv); }
