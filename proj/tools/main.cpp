#include <iostream>

#include "wgshift_cli.hpp"

int main(int argc, char** argv) { return wgshift::cli::run(argc, argv, std::cout, std::cerr); }
