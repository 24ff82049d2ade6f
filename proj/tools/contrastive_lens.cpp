#include "clens/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return clens::run_cli(args, std::cout, std::cerr);
}
