#include <iostream>
#include <string>
#include <vector>

#include "ngpsim/harness.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ngpsim::cli(args, std::cout, std::cerr);
}
