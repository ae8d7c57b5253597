#pragma once

#include <string>
#include <vector>

namespace hshift::cli {

  struct Outcome {
    std::string report;
    // 0: certified answer, 2: some answer is Unknown, 1: error.
    int exit = 1;
  };

  // args without the program name: <command> <descriptor.json> [flags].
  // With --out the report is also written to that file; a relative path
  // is resolved against $HSHIFT_OUTPUT_DIR when that is set.
  Outcome run(std::vector<std::string> const& args);

  std::vector<std::string> const& commands();

}  // namespace hshift::cli
