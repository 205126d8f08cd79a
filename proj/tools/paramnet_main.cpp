#include "paramnet/cli.hpp"

#include <iostream>
#include <vector>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return paramnet::cli::main_from_args(args, std::cout, std::cerr);
}
