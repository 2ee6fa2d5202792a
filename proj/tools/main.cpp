#include <iostream>

#include "sharpflat/cli.hpp"

int main(int argc, char** argv)
{
    return sharpflat::cli::main_entry(argc, argv, std::cin, std::cout, std::cerr);
}
