#include <iostream>
#include <string>
#include <vector>

#include "eigenpro/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return eigenpro::cli::run(args, std::cout, std::cerr);
}
