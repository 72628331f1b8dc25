#include <iostream>
#include <string>
#include <vector>

#include "pk/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return pk::cli_main(args, std::cout, std::cerr);
}
