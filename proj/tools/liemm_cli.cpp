#include <iostream>
#include <string>
#include <vector>

#include "liemm/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return liemm::run_cli(args, std::cout, std::cerr);
}
