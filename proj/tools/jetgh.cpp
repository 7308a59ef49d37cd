#include <iostream>

#include "jetgh/cli.hpp"

int main(int argc, char** argv) { return jetgh::run_cli(argc, argv, std::cout, std::cerr); }
