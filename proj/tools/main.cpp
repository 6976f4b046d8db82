#include <iostream>
#include <string>
#include <vector>

#include "mql/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return mql::cli::run(args, std::cout, std::cerr);
}
