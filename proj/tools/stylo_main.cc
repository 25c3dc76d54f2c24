#include <iostream>
#include <string>
#include <vector>

#include "stylo/cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return stylo::cli::Run(args, std::cout, std::cerr);
}
