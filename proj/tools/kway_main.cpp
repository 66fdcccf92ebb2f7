#include <iostream>

#include "kway/cli.hpp"

int main(int argc, char** argv) { return kway::cli::run(argc, argv, std::cout, std::cerr); }
