#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  return infolab::cli::main_entry(argc, argv, std::cout, std::cerr);
}
