#include <iostream>
#include <string>
#include <vector>

#include "gbessel/cli.hpp"

int main(int argc, char** argv) {
  return gbessel::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
