#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace citenet::ingest {

/// Ordered set of k citation-intent names. Index k is reserved for the
/// discriminator's synthetic class and never appears as a label.
class LabelSchema {
 public:
  static constexpr std::string_view kFakeLabel = "<fake>";

  /// Throws ValidationError on duplicates, empty names, the reserved name, or k < 2.
  explicit LabelSchema(std::vector<std::string> labels);

  /// One label per line; line order defines indices. Trailing blank lines are ignored.
  static LabelSchema parse(std::istream& in);
  static LabelSchema load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

  std::size_t size() const { return labels_.size(); }
  std::size_t fake_index() const { return labels_.size(); }
  const std::string& name(std::size_t index) const { return labels_.at(index); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  bool operator==(const LabelSchema&) const = default;

 private:
  std::vector<std::string> labels_;
};

}  // namespace citenet::ingest
