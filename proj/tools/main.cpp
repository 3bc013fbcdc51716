#include <iostream>

#include "valmono/cli.hpp"

int main(int argc, char** argv) { return valmono::cli_main(argc, argv, std::cout, std::cerr); }
