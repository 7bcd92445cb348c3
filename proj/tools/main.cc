#include <iostream>

#include "disamb/cli.h"

int main(int argc, char** argv) { return disamb::run_cli(argc, argv, std::cout, std::cerr); }
