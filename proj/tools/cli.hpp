#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace schedsim::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

struct Streams {
  std::ostream& out;
  std::ostream& err;
  bool color = false;
};

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run(const std::vector<std::string>& args, Streams io);

}  // namespace schedsim::cli
