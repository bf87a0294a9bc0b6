#include <iostream>

#include "spdc/cli.hpp"

int main(int argc, char** argv) { return spdc::cli::run(argc, argv, std::cout, std::cerr); }
