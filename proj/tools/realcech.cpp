#include <iostream>

#include "realcech/cli/cli.hpp"

int main(int argc, char** argv) { return realcech::run_cli(argc, argv, std::cout, std::cerr); }
