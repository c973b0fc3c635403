#include <iostream>

#include "hellyrel/cli.hpp"

int main(int argc, char** argv) {
  return hellyrel::run_command(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
