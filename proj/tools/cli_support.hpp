#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "citenet/cli/run_config.hpp"

namespace citenet::tool {

using Command = std::function<int()>;

/// Config layering for one subcommand: preset, then --config file, then
/// --set assignments, then dedicated flags in command-line order.
struct ConfigLayers {
  std::string preset;
  std::string config_path;
  std::vector<std::string> assignments;
  std::vector<std::pair<std::string, std::string>> flags;
};

/// Adds --config, --set and --threads; --preset too when `with_preset`.
void add_config_options(CLI::App* sub, const std::shared_ptr<ConfigLayers>& layers, bool with_preset = false);
/// A flag that overrides config key `key`; help text comes from the key table.
void add_key_flag(CLI::App* sub, const std::shared_ptr<ConfigLayers>& layers, const std::string& flag,
                  const std::string& key);
/// Applies the layers and the thread count.
cli::RunConfig resolve(const ConfigLayers& layers);

/// Writes `<output>.run.conf`.
void write_resolved(const cli::RunConfig& config, const std::filesystem::path& output);

/// Binds a subcommand callback that stores `run` for main to execute after parsing.
void on_selected(CLI::App* sub, Command& slot, Command run);

void register_data_commands(CLI::App& app, Command& slot);
void register_model_commands(CLI::App& app, Command& slot);
void register_network_commands(CLI::App& app, Command& slot);

}  // namespace citenet::tool
