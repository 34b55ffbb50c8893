#include <iostream>

#include "fnets/cli.hpp"

int main(int argc, char** argv) { return fnets::run_cli(argc, argv, std::cout, std::cerr); }
