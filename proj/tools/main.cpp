#include <iostream>
#include <string>
#include <vector>

#include "modsign/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return modsign::cli::run(args, std::cout, std::cerr);
}
