#include "citenet/ingest/citation_record.hpp"

#include <unordered_set>

#include "citenet/common/csv.hpp"
#include "citenet/common/error.hpp"
#include "citenet/common/numfmt.hpp"

namespace citenet::ingest {

std::size_t write_csv(std::span<const CitationRecord> records, std::ostream& out) {
  CsvWriter csv(out);
  csv.row({"record_id", "citing_id", "cited_id", "section", "context", "gold_intent"});
  for (const auto& r : records) {
    csv.field(r.record_id).field(r.citing_id).field(r.cited_id);
    if (r.section) {
      csv.field(*r.section, r.section->empty());
    } else {
      csv.field("");
    }
    csv.field(r.context, r.context.empty());
    csv.field(r.gold_intent ? std::to_string(*r.gold_intent) : std::string());
    csv.end_row();
  }
  return records.size();
}

std::size_t write_csv(std::span<const CitationRecord> records, const std::filesystem::path& path) {
  auto out = open_output(path);
  const auto n = write_csv(records, out);
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
  return n;
}

std::vector<CitationRecord> read_csv(std::istream& in, std::optional<std::size_t> num_classes,
                                     std::string_view source) {
  CsvReader reader(in);
  CsvRow row;
  std::vector<CitationRecord> records;
  if (!reader.next(row)) throw FormatError(std::string(source) + ": missing CSV header");
  expect_header(row, {"record_id", "citing_id", "cited_id", "section", "context", "gold_intent"}, source);

  std::unordered_set<std::string> ids;
  while (reader.next(row)) {
    const auto where = std::string(source) + ":" + std::to_string(reader.row_line());
    if (row.size() != 6) throw FormatError(where + ": expected 6 fields, got " + std::to_string(row.size()));
    CitationRecord r;
    r.record_id = std::move(row[0].text);
    r.citing_id = std::move(row[1].text);
    r.cited_id = std::move(row[2].text);
    if (!row[3].text.empty() || row[3].quoted) r.section = std::move(row[3].text);
    r.context = std::move(row[4].text);
    if (!row[5].text.empty()) {
      auto idx = parse_int(row[5].text);
      if (!idx || *idx < 0) throw FormatError(where + ": gold_intent is not a class index");
      if (num_classes && static_cast<std::size_t>(*idx) >= *num_classes) {
        throw ValidationError(where + ": gold_intent " + row[5].text + " outside label schema");
      }
      r.gold_intent = static_cast<std::size_t>(*idx);
    }
    if (!ids.insert(r.record_id).second) throw ValidationError(where + ": duplicate record_id '" + r.record_id + "'");
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<CitationRecord> read_csv(const std::filesystem::path& path, std::optional<std::size_t> num_classes) {
  auto in = open_input(path);
  return read_csv(in, num_classes, path.string());
}

}  // namespace citenet::ingest
