// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite runner: one PASS/FAIL line per criterion, nonzero exit
// when any criterion fails.

#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>

#include "bia/acceptance.hpp"

int main(int argc, char** argv) {
  int workers = static_cast<int>(std::thread::hardware_concurrency());
  if (argc > 1) workers = std::atoi(argv[1]);
  if (workers < 1) workers = 1;
  return bia::acceptance_main(std::cout, workers);
}
