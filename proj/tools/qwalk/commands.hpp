#pragma once

#include <functional>

#include <CLI11.hpp>

namespace qwalk::cli {

/// Adds every subcommand to `app`. After a successful parse `action` holds the
/// selected command; it throws UsageError or any runtime error.
void register_commands(CLI::App& app, std::function<void()>& action);

}  // namespace qwalk::cli
