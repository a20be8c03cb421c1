#include <iostream>

#include "nilkill/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return nilkill::run_cli(args, std::cout, std::cerr);
}
