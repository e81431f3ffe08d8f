#include <iostream>

#include "tcid/cli.hpp"

int main(int argc, char** argv) { return tcid::run_cli(argc, argv, std::cout, std::cerr); }
