#include <iostream>

#include "symbidisc/cli.hpp"

int main(int argc, char** argv) { return symbidisc::run_cli(argc, argv, std::cout, std::cerr); }
