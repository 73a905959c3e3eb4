#include <string>
#include <vector>

#include "cta/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cta::cli_main(args);
}
