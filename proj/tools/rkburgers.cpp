#include <iostream>

#include "rkb/cli.hpp"

int main(int argc, char** argv) { return rkb::cli::run(argc, argv, std::cout, std::cerr); }
