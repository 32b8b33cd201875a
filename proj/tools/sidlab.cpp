#include <iostream>

#include "sid/cli/app.hpp"

int main(int argc, char** argv) { return sid::cli::run_cli(argc, argv, std::cout, std::cerr); }
