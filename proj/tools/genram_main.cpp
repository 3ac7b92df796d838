#include <iostream>

#include "genram/cli.hpp"

int main(int argc, char** argv) { return genram::run_cli(argc, argv, std::cout, std::cerr); }
