#include <iostream>

#include "pdcone/commands.hpp"

int main(int argc, char** argv) { return pdcone::run_cli(argc, argv, std::cout, std::cerr); }
