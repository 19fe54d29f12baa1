#include <iostream>

#include "ll1/cli.hpp"

int main(int argc, char** argv) { return ll1::cli::run(argc, argv, std::cout, std::cerr); }
