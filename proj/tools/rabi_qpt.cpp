#include "rabi_qpt/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return rabi_qpt::cli::run(argc, argv, std::cout, std::cerr);
}
