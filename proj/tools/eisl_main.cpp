#include <iostream>

#include "eisl/cli.hpp"

int main(int argc, char** argv) { return eisl::cli::run(argc, argv, std::cout, std::cerr); }
