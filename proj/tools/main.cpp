#include <iostream>
#include <string>
#include <vector>

#include "qcmflow/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qcm::run_cli(args, std::cin, std::cout, std::cerr);
}
