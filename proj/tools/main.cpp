#include "cli/commands.hpp"
#include "cli/run_config.hpp"

#include <iostream>

int main(int argc, char** argv) {
    auto parsed = slidewb::cli::parse_command_line(argc, argv);
    if (!parsed.config) {
        (parsed.exit_code == 0 ? std::cout : std::cerr) << parsed.output << '\n';
        return parsed.exit_code;
    }
    return slidewb::cli::run(*parsed.config, std::cout, std::cerr);
}
