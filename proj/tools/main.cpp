#include <iostream>

#include "ri/commands.hpp"

int main(int argc, char** argv) {
    return ri::run_cli(argc, argv, std::cout, std::cerr);
}
