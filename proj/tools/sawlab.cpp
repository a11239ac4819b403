#include <iostream>

#include "sawlab/cli.hpp"

int main(int argc, char** argv) {
  return sawlab::cli::main(argc, argv, std::cout, std::cerr);
}
