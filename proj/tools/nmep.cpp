#include <string>
#include <vector>

#include "nmep/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return nmep::cli::run(args);
}
