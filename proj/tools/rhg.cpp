#include <iostream>

#include "rhg/cli.hpp"

int main(int argc, char** argv) { return rhg::cli::run(argc, argv, std::cout, std::cerr); }
