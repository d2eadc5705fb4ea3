#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const char* color_env = std::getenv("SCHEDSIM_COLOR");
  const bool color = isatty(STDOUT_FILENO) && !(color_env && std::string(color_env) == "0");
  return schedsim::cli::run(args, {std::cout, std::cerr, color});
}
