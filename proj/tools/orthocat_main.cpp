#include <iostream>
#include <string>
#include <vector>

#include "orthocat/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return orthocat::cli::run(args, std::cout, std::cerr);
}
