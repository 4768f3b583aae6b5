#include <iostream>

#include "eqc_cli.hpp"

int main(int argc, char** argv) { return eqc::cli::run_cli(argc, argv, std::cout, std::cerr); }
