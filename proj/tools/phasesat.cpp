#include <iostream>
#include <string>
#include <vector>

#include "phasesat/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return phasesat::runCli(args, std::cout, std::cerr);
}
