#include <iostream>

#include "sieve/cli.hpp"

int main(int argc, char** argv) {
  return sieve::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
