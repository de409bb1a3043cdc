#include <iostream>
#include <string>
#include <vector>

#include "p123/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return p123::run_cli(args, std::cin, std::cout, std::cerr);
}
