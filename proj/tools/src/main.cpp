#include <iostream>
#include <string>
#include <vector>

#include "elastica/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return elastica::cli::run(args, std::cout, std::cerr);
}
