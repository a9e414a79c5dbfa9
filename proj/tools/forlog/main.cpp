#include <iostream>

#include "forlog/cli.hpp"

int main(int argc, char** argv) { return forlog::cli::main(argc, argv, std::cin, std::cout, std::cerr); }
