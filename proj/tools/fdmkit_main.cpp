#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "fdmkit/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    try {
        return fdmkit::cli::main_entry(args, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "fdmkit: internal error: " << e.what() << '\n';
        return 1;
    }
}
