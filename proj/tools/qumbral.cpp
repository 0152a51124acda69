#include <iostream>

#include "qumbral/cli.hpp"

int main(int argc, char** argv) { return qumbral::cli::run(argc, argv, std::cout, std::cerr); }
