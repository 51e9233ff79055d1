#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    ordstat::cli::Environment env;
    if (const char* budget = std::getenv("ORDSTAT_BUDGET")) {
        env.budget = budget;
    }
    return ordstat::cli::run(args, std::cin, std::cout, std::cerr, env);
}
