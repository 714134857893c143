#include <iostream>

#include "rkgl/cli.hpp"

int main(int argc, char** argv) { return rkgl::cli::main(argc, argv, std::cout, std::cerr); }
