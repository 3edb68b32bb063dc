#include <string>
#include <vector>

#include "polysig/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return polysig::cli::run(args);
}
