#include <iostream>

#include "densitylab/cli/cli.hpp"

int main(int argc, char** argv) { return densitylab::cli::run(argc, argv, std::cout, std::cerr); }
