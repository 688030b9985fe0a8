#include "sklab/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return sklab::run(argc, argv, std::cout, std::cerr); }
