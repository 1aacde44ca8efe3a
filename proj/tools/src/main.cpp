#include "tssb_cli/commands.hpp"

#include <iostream>

int main(int argc, char **argv) {
  return tssb::cli::run(argc, argv, std::cout, std::cerr);
}
