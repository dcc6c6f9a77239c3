#include "hullopt/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return hullopt::cli::run(argc, argv, std::cout, std::cerr);
}
