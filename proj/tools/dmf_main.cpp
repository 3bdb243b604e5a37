#include <iostream>

#include "dmf/cli.hpp"

int main(int argc, char** argv) { return dmf::cli_main(argc, argv, std::cout, std::cerr); }
