#include <iostream>
#include <string>
#include <vector>

#include "mira/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return mira::cli::run(args, std::cout, std::cerr);
}
