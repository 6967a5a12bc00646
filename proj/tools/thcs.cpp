#include <iostream>

#include "thcs/cli.hpp"

int main(int argc, char** argv) { return thcs::cli_dispatch(argc, argv, std::cout, std::cerr); }
