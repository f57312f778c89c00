#include <cstdlib>
#include <iostream>

#include <unistd.h>

#include <fghopf/cli.hpp>

int main(int argc, char **argv)
{
    const std::vector<std::string> args(argv + 1, argv + argc);
    fghopf::cli::options opt;
    opt.color = isatty(STDOUT_FILENO) && std::getenv("NO_COLOR") == nullptr;
    return fghopf::cli::run(args, std::cout, std::cerr, opt);
}
