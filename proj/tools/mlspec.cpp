#include <iostream>

#include "mlspec/cli.hpp"

int main(int argc, char** argv) { return mlspec::cli::run(argc, argv, std::cout, std::cerr); }
