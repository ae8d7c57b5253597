#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  auto outcome = hshift::cli::run({argv + 1, argv + argc});
  std::cout << outcome.report;
  return outcome.exit;
}
