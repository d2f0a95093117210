#include <iostream>

#include "sreq/cli.hpp"

int main(int argc, char** argv) { return sreq::run(argc, argv, std::cout, std::cerr); }
