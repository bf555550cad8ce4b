#include <iostream>
#include <string>
#include <vector>

#include "dlcomp/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return dlcomp::cli::run(args, std::cout, std::cerr);
}
