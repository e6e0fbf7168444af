#include <iostream>
#include <string>
#include <vector>

#include "aoi/cli.hpp"

int main(int argc, char **argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return aoi::run_cli(args, std::cin, std::cout, std::cerr);
}
