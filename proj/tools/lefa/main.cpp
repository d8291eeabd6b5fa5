#include <iostream>

#include "lefa/cli.hpp"

int main(int argc, char** argv) { return lefa::cli::run(argc, argv, std::cout, std::cerr); }
