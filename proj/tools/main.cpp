#include <iostream>
#include <string>
#include <vector>

#include "l0screen/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return l0screen::cli::run(args, std::cout, std::cerr);
}
