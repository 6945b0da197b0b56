#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return cdes::cli::run(argc, argv, std::cout, std::cerr); }
