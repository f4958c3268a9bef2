#include <iostream>

#include "normalbasis/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return normalbasis::run_cli(args, std::cout, std::cerr);
}
