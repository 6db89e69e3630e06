#include <iostream>

#include "algperm/cli.hpp"

int main(int argc, char** argv) { return algperm::cli::run(argc, argv, std::cout, std::cerr); }
