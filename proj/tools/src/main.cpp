#include <iostream>

#include "dqtsc/cli/commands.hpp"

int main(int argc, char** argv) { return dqtsc::cli::run(argc, argv, std::cout, std::cerr); }
