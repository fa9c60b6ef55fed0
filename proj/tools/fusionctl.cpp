#include <iostream>

#include "fusion/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fusion::run_cli(args, std::cout, std::cerr);
}
