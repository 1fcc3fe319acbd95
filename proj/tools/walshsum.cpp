#include "walshsum/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return walshsum::run_cli(argc, argv, std::cout, std::cerr); }
