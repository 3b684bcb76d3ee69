#include <iostream>
#include <string>
#include <vector>

#include "cycloforge/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cycloforge::dispatch(args, std::cout, std::cerr);
}
