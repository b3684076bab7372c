#include <iostream>

#include "proclang/cli.hpp"

int main(int argc, char** argv) { return proclang::run_cli(argc, argv, std::cin, std::cout, std::cerr); }
