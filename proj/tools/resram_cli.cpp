#include <iostream>
#include <string>
#include <vector>

#include "resram/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return resram::run_cli(args, std::cout, std::cerr);
}
