#include <iostream>

#include "pulseforge/cli.hpp"

int main(int argc, char** argv)
{
    return pulseforge::cli(argc, argv, std::cout, std::cerr);
}
