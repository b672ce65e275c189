#include <iostream>

#include "namesound/cli.hpp"

int main(int argc, char** argv) {
  return namesound::cli::run(argc, argv, std::cout, std::cerr);
}
