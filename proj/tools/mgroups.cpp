#include <iostream>

#include "mg/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mg::cli_main(args, std::cout, std::cerr);
}
