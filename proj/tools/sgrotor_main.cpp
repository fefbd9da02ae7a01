#include <string>
#include <vector>

#include "sgrotor/cli.hpp"

int main(int argc, char** argv) {
    return sgr::io::cli_main(std::vector<std::string>(argv + 1, argv + argc));
}
