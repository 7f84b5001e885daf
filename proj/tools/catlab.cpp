#include "catlab/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return catlab::cli::run(argc, argv, std::cout, std::cerr); }
