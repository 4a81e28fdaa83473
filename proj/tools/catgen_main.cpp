#include <iostream>

#include "catgen/cli.hpp"

int main(int argc, char** argv) { return catgen::cli_main(argc, argv, std::cout, std::cerr); }
