#include <iostream>

#include "snlw/cli.hpp"

int main(int argc, char** argv) { return snlw::run_cli(argc, argv, std::cout, std::cerr); }
