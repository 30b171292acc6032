#include <iostream>

#include "unani/cli/commands.hpp"

int main(int argc, char** argv) { return unani::cli::run(argc, argv, std::cout, std::cerr); }
