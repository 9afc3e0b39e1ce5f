#include <iostream>
#include "rgpe/cli.hpp"

int main(int argc, char** argv) {
    return rgpe::cli_main(argc, argv, std::cout, std::cerr);
}
