#include "skewmat/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return skewmat::run_cli(std::move(args), std::cout);
}
