#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "citenet/centrality/centrality.hpp"
#include "citenet/ssgan/train.hpp"

namespace citenet::cli {

enum class ValueKind { integer, real, optional_real, boolean, text, choice };

struct KeySpec {
  std::string name;
  ValueKind kind;
  std::string default_value;
  std::vector<std::string> choices;  // ValueKind::choice only
  std::string help;
};

/// Every key a run configuration may carry, in output order.
const std::vector<KeySpec>& known_keys();

/// Flat key=value run configuration. Lines starting with '#' and blank lines
/// are ignored. Unknown keys and malformed values throw ValidationError.
class RunConfig {
 public:
  RunConfig();

  /// Overwrites the training and architecture keys with a preset's values.
  void apply_preset(const ssgan::Preset& preset);

  void load(std::istream& in, std::string_view source = "<config>");
  void load(const std::filesystem::path& path);
  /// Parses "key=value".
  void set_assignment(std::string_view assignment);
  void set(std::string_view key, std::string_view value);

  bool has_value(std::string_view key) const;  // false for an empty value
  const std::string& text(std::string_view key) const;
  std::int64_t integer(std::string_view key) const;
  std::size_t count(std::string_view key) const;
  double real(std::string_view key) const;
  std::optional<double> optional_real(std::string_view key) const;
  bool flag(std::string_view key) const;
  /// Comma-separated list with surrounding whitespace trimmed; empty items dropped.
  std::vector<std::string> list(std::string_view key) const;

  ssgan::TrainConfig train_config() const;  // seed must be set
  /// Architecture fields from the config; class count and dim from the caller.
  ssgan::Architecture architecture(std::size_t num_classes, std::size_t embedding_dim) const;
  centrality::CentralityOptions centrality_options() const;

  /// Resolved config in key order, one `key=value` per line.
  void write(std::ostream& out) const;
  void write(const std::filesystem::path& path) const;

 private:
  const KeySpec& spec(std::string_view key) const;

  std::map<std::string, std::string, std::less<>> values_;
};

/// `<output>.run.conf`, the resolved-config location written beside an output.
std::filesystem::path resolved_config_path(const std::filesystem::path& output);

}  // namespace citenet::cli
