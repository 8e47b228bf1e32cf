#include "basslab/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return basslab::cli::run(argc, argv, std::cout, std::cerr);
}
