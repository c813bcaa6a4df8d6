#include <iostream>

#include "shadowlp/cli.hpp"

int main(int argc, char** argv) {
  return shadowlp::cli::run(argc, argv, std::cout, std::cerr);
}
