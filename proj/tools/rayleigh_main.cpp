#include <iostream>

#include "rayleigh/cli/app.hpp"

int main(int argc, char** argv) { return rayleigh::cli::run_cli(argc, argv, std::cout, std::cerr); }
