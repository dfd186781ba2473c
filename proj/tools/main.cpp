#include <iostream>
#include <string>
#include <vector>

#include "pocmob/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pocmob::cli::run(args, std::cout, std::cerr);
}
