#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return sumsetlab::cli::cli_entry(argc, argv, std::cout, std::cerr); }
