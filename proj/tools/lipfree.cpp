#include <iostream>

#include "lipfree/cli.hpp"

int main(int argc, char** argv) { return lipfree::run_cli(argc, argv, std::cout, std::cerr); }
