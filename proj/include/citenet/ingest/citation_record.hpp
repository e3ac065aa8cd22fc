#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace citenet::ingest {

/// One citation context. `gold_intent`, when set, indexes a LabelSchema.
struct CitationRecord {
  std::string record_id;
  std::string citing_id;
  std::string cited_id;
  std::string context;
  std::optional<std::string> section;
  std::optional<std::size_t> gold_intent;

  bool operator==(const CitationRecord&) const = default;
};

/// Writes `record_id,citing_id,cited_id,section,context,gold_intent`.
/// An absent section is an empty unquoted cell; a present empty section is `""`.
std::size_t write_csv(std::span<const CitationRecord> records, std::ostream& out);
std::size_t write_csv(std::span<const CitationRecord> records, const std::filesystem::path& path);

/// Inverse of write_csv. When `num_classes` is given, gold intents must be below it.
std::vector<CitationRecord> read_csv(std::istream& in, std::optional<std::size_t> num_classes = std::nullopt,
                                     std::string_view source = "<stream>");
std::vector<CitationRecord> read_csv(const std::filesystem::path& path,
                                     std::optional<std::size_t> num_classes = std::nullopt);

}  // namespace citenet::ingest
