#include <iostream>

#include "fcalc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fcalc::dispatch(args, std::cout, std::cerr);
}
