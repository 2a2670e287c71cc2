#include <iostream>

#include "spectrum/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return spectrum::cli::run(args, std::cout, std::cerr);
}
