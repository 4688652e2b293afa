#include <iostream>

#include "qdfrac/cli.hpp"

int main(int argc, char** argv) {
    return qdfrac::cli::run(argc, argv, std::cout, std::cerr);
}
