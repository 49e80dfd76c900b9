#include <iostream>
#include <string>
#include <vector>

#include "rdom/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rdom::cli::run(std::move(args), std::cout, std::cerr);
}
