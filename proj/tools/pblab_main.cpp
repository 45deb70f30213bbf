#include <iostream>

#include "pblab/cli.hpp"

int main(int argc, char** argv) { return pblab::run_cli(argc, argv, std::cout, std::cerr); }
