#include <iostream>

#include "debranges/cli.hpp"

int main(int argc, char** argv) {
  return debranges::cli::main_entry(argc, argv, std::cout, std::cerr);
}
