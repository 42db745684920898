#include <iostream>

#include "rgamss/cli.hpp"

int main(int argc, char** argv) { return rgamss::cli::run(argc, argv, std::cout, std::cerr); }
