#include <iostream>

#include "cliffring/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cliffring::run_cli(args, std::cout, std::cerr);
}
