#include <iostream>

#include "app.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    pbpois::app::CliResult r = pbpois::app::run(args);
    std::cout << r.out;
    std::cerr << r.err;
    return r.exit_code;
}
