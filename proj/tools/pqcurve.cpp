#include <iostream>

#include "pqcurve/cli.hpp"

int main(int argc, char** argv) { return pqcurve::run(argc, argv, std::cout, std::cerr); }
