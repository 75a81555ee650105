#pragma once

#include "run_config.hpp"

#include <filesystem>
#include <ostream>
#include <vector>

namespace slidewb::cli {

/// Expands directories (recursively, sorted) into supported image files.
/// Plain file arguments are kept as given, readable or not.
std::vector<std::filesystem::path> expand_inputs(const std::vector<std::filesystem::path>& inputs);

/// `<stem>.<tag>.<ext>` inside out_dir.
std::filesystem::path output_path(const std::filesystem::path& out_dir,
                                  const std::filesystem::path& input, const std::string& tag);

int cmd_correct(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_retinex(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Dispatches on config.command.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace slidewb::cli
