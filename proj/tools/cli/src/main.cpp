#include <iostream>
#include <string>
#include <vector>

#include "hatano/cli/commands.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return hatano::cli::run_cli(args, std::cout, std::cerr);
}
