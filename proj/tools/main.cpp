#include <iostream>
#include <string>
#include <vector>

#include "pm4cover/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return pm4cover::cli_run(args, std::cout, std::cerr);
}
