#include <iostream>
#include <string>
#include <vector>

#include "dncode/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dncode::cli::run(args, std::cout, std::cerr);
}
