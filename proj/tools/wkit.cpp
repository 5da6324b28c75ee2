#include <iostream>
#include <string>
#include <vector>

#include "wkit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return wkit::cli::run(args, std::cout);
}
