// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 orkg-lite contributors

#include <iostream>
#include <string>
#include <vector>

#include "orkg/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return orkg::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
