#include <iostream>

#include "axelrod_lab/cli.hpp"

int main(int argc, char** argv) {
  return axelrod::cli::run(argc, argv, std::cout, std::cerr);
}
