#include <iostream>
#include <string>
#include <vector>

#include "dx3/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return dx3::run_cli(std::move(args), std::cout, std::cerr);
}
