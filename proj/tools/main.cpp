#include <iostream>

#include "pedops/cli.hpp"

int main(int argc, char** argv) {
  return pedops::run_cli(argc, argv, std::cout, std::cerr);
}
