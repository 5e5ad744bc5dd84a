#include <iostream>
#include <string>
#include <vector>

#include "channelkit/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return channelkit::cli::main(std::move(args), std::cout, std::cerr);
}
