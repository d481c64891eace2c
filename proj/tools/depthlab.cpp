#include <iostream>

#include "depthlab/cli.hpp"

int main(int argc, char** argv) { return depthlab::cli::run(argc, argv, std::cout, std::cerr); }
