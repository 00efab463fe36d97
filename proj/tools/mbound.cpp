#include <iostream>
#include <string>
#include <vector>

#include "mbound/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mbound::cli::run(args, std::cout, std::cerr);
}
