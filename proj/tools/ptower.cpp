#include <iostream>
#include <string>
#include <vector>

#include "ptower/cli.hpp"

int main(int argc, char **argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return ptower::cli::run(args, std::cout, std::cerr);
}
