#include <iostream>

#include "cutlim/cli/experiment.hpp"

int main(int argc, char** argv) { return cutlim::cli::main_entry(argc, argv, std::cout, std::cerr); }
