#include <iostream>
#include <vector>

#include "afmsync/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return afmsync::cli::run(args, std::cout, std::cerr);
}
