#pragma once

#include "slidewb/balance.hpp"
#include "slidewb/eval.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace slidewb::cli {

enum class Command { Correct, Compare, Retinex };

/// Fully resolved settings for one invocation. Precedence when parsing:
/// command-line flags, then the --config file, then built-in defaults.
struct RunConfig {
    Command command = Command::Correct;
    std::vector<std::filesystem::path> inputs;
    std::filesystem::path out_dir = ".";
    std::vector<std::string> methods;
    BalanceOptions options;
    std::optional<std::filesystem::path> ground_truth;
    ReportFormat format = ReportFormat::Text;
    std::optional<std::filesystem::path> report_path;  // stdout when empty
    std::size_t workers = 1;
    StdDevKind stddev = StdDevKind::Population;
    bool write_images = false;  // compare: also save every corrected variant
    bool use_msr = false;       // retinex: true when --msr-scales was given
    bool gray = false;          // retinex: run on the BT.601 grayscale image
};

/// Parses "sigma:weight,sigma:weight,...". Throws std::invalid_argument.
std::vector<ScaleWeight> parse_msr_scales(std::string_view text);

struct ParseOutcome {
    std::optional<RunConfig> config;  // empty when the process should exit
    int exit_code = 0;
    std::string output;  // help text or a one-line diagnostic
};

/// Never throws; usage problems come back as exit_code 2 with a single-line
/// diagnostic naming the offending flag.
ParseOutcome parse_command_line(int argc, const char* const* argv);

}  // namespace slidewb::cli
