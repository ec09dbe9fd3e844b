#include <iostream>

#include "qwstar/cli.hpp"

int main(int argc, char** argv) { return qwstar::cli::run_cli(argc, argv, std::cout, std::cerr); }
