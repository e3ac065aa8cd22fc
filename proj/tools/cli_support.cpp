#include "cli_support.hpp"

#include "citenet/common/error.hpp"
#include "citenet/common/parallel.hpp"
#include "citenet/ssgan/train.hpp"

namespace citenet::tool {

void add_config_options(CLI::App* sub, const std::shared_ptr<ConfigLayers>& layers, bool with_preset) {
  if (with_preset) {
    layers->preset = "acl";
    sub->add_option("--preset", layers->preset, "hyperparameter preset: acl (alias 3c, acl-arc) or scicite")
        ->capture_default_str();
  }
  sub->add_option("--config", layers->config_path, "key=value run configuration file");
  sub->add_option("--set", layers->assignments, "override one config key, as key=value (repeatable)");
  add_key_flag(sub, layers, "--threads", "threads");
}

void add_key_flag(CLI::App* sub, const std::shared_ptr<ConfigLayers>& layers, const std::string& flag,
                  const std::string& key) {
  std::string help;
  for (const auto& k : cli::known_keys()) {
    if (k.name == key) {
      help = k.help + " [config: " + key + (k.default_value.empty() ? "" : ", default " + k.default_value) + "]";
    }
  }
  sub->add_option_function<std::string>(
      flag, [layers, key](const std::string& v) { layers->flags.emplace_back(key, v); }, help);
}

cli::RunConfig resolve(const ConfigLayers& layers) {
  cli::RunConfig config;
  if (!layers.preset.empty()) {
    const auto preset = ssgan::find_preset(layers.preset);
    if (!preset) throw ValidationError("unknown preset '" + layers.preset + "'");
    config.apply_preset(*preset);
  }
  if (!layers.config_path.empty()) config.load(std::filesystem::path(layers.config_path));
  for (const auto& a : layers.assignments) config.set_assignment(a);
  for (const auto& [key, value] : layers.flags) config.set(key, value);
  set_thread_count(static_cast<unsigned>(config.count("threads")));
  return config;
}

void write_resolved(const cli::RunConfig& config, const std::filesystem::path& output) {
  config.write(cli::resolved_config_path(output));
}

void on_selected(CLI::App* sub, Command& slot, Command run) {
  sub->callback([&slot, run = std::move(run)] { slot = run; });
}

}  // namespace citenet::tool
