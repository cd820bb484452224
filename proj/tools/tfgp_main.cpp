#include <iostream>

#include "tfgp/cli.hpp"

int main(int argc, char** argv) { return tfgp::run_cli(argc, argv, std::cout, std::cerr); }
