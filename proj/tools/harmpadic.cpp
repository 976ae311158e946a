#include <string>
#include <vector>

#include "harmpadic/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return harmpadic::run_cli(std::move(args));
}
