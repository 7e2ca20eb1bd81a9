#include <iostream>

#include "speclat/cli.hpp"

int main(int argc, char** argv) {
  return speclat::cli::run_command(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
