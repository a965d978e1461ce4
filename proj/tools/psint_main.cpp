#include <iostream>

#include "psint/cli.hpp"

int main(int argc, char** argv) {
    return psint::cli_run(argc, argv, std::cout, std::cerr);
}
