#include <iostream>
#include <string>
#include <vector>

#include "circlepat/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return circlepat::cli::run(args, std::cout, std::cerr);
}
