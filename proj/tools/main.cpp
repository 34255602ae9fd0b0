#include <iostream>

#include "ldpgc/cli.hpp"

int main(int argc, char** argv) {
    return ldpgc::cli_main(argc, argv, std::cout, std::cerr);
}
