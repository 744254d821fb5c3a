#include <iostream>

#include "cde/cli.hpp"

int main(int argc, char** argv) { return cde::cli::run(argc, argv, std::cout, std::cerr); }
