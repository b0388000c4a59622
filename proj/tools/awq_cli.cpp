#include <iostream>

#include "awq/cli.hpp"

int main(int argc, char** argv) { return awq::cli::main_entry(argc, argv, std::cout, std::cerr); }
