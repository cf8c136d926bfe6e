#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
    const auto parsed = monoseq::cli::parse_args(argc, argv, std::cout, std::cerr);
    if (!parsed.config) return parsed.exit_code;
    return monoseq::cli::run(*parsed.config, std::cout, std::cerr);
}
