#include "qliar/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qliar::run(args, std::cout, std::cerr);
}
