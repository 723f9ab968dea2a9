#include <iostream>

#include "aglstab/cli.hpp"

int main(int argc, char** argv) { return aglstab::run_cli(argc, argv, std::cout, std::cerr); }
