#include <iostream>

#include "ghor/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ghor::run_cli(args, std::cout, std::cerr);
}
