#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "citenet/ingest/citation_record.hpp"
#include "citenet/ingest/label_schema.hpp"

namespace citenet::ingest {

/// Names the JSON keys that hold each record field. Keys may be dotted paths
/// ("metadata.id") into nested objects.
struct FieldMap {
  /// Empty: synthesize IDs from the line number ("L12", or "L12.3" for the
  /// fourth context on line 12).
  std::string record_id = "record_id";
  std::string citing_id = "citing_id";
  std::string cited_id = "cited_id";
  std::string context = "context";
  /// Optional field; a missing section is not an error.
  std::string section = "section";
  /// Optional key holding a gold label name; requires a schema.
  std::string intent;
  /// When set, each line is a paper whose `contexts` array holds one object
  /// per citation context. `citing_id` is then read from the paper object
  /// unless the context object carries its own.
  std::string contexts;
};

struct SkipEntry {
  std::size_t line = 0;
  std::optional<std::size_t> item;
  std::string reason;
};

struct JsonlResult {
  std::vector<CitationRecord> records;
  std::vector<SkipEntry> skipped;
  std::size_t lines = 0;
};

/// Best-effort extraction: malformed lines and contexts missing required
/// fields are reported in `skipped` and never abort the parse.
JsonlResult parse_jsonl(std::istream& in, const FieldMap& fields, const LabelSchema* schema = nullptr);

/// CSV `line,item,reason`.
void write_skip_report(std::span<const SkipEntry> skipped, std::ostream& out);

}  // namespace citenet::ingest
