#include <iostream>
#include <string>
#include <vector>

#include "qdating/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return qdating::cli::run(args, std::cout, std::cerr);
}
