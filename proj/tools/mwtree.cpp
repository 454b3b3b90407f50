#include <iostream>

#include "mwtree/cli.hpp"

int main(int argc, char** argv) {
  return mwtree::cli::run(argc, argv, std::cin, std::cout, std::cerr);
}
