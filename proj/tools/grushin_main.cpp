#include "grushin/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return grushin::cli_main(argc, argv, std::cout, std::cerr);
}
