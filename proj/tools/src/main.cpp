#include <iostream>

#include "spinrot_cli/cli.hpp"

int main(int argc, char** argv) { return spinrot::cli::run(argc, argv, std::cout, std::cerr); }
