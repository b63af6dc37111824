#include <iostream>

#include "moment_atlas_tools/cli.hpp"

int main(int argc, char** argv) { return moment_atlas::cli::run(argc, argv, std::cout, std::cerr); }
