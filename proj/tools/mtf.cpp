#include <iostream>

#include "mtf/cli.hpp"

int main(int argc, char** argv) { return mtf::cli::run(argc, argv, std::cout, std::cerr); }
