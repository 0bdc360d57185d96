#include <iostream>

#include "shabound/cli.hpp"

int main(int argc, char** argv) { return shabound::run_cli(argc, argv, std::cout, std::cerr); }
