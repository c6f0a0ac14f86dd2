#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <unistd.h>

#include <condorcet/cli.hpp>

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv, argv + argc);
    return condorcet::cli::run(args, std::cout, std::cerr, ::isatty(STDOUT_FILENO) != 0);
}
