#include <iostream>
#include <string>
#include <vector>

#include "dblie/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dblie::run_cli(args, std::cout, std::cerr);
}
