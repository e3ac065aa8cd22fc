#include "citenet/ingest/jsonl.hpp"

#include <unordered_set>

#include "citenet/common/csv.hpp"
#include "citenet/common/error.hpp"
#include "json.hpp"

namespace citenet::ingest {

namespace {

using nlohmann::json;

const json* lookup(const json& object, std::string_view path) {
  if (path.empty() || !object.is_object()) return nullptr;
  const json* node = &object;
  while (!path.empty()) {
    const auto dot = path.find('.');
    const auto key = path.substr(0, dot);
    if (!node->is_object()) return nullptr;
    auto it = node->find(key);
    if (it == node->end()) return nullptr;
    node = &*it;
    path = dot == std::string_view::npos ? std::string_view{} : path.substr(dot + 1);
  }
  return node;
}

std::optional<std::string> lookup_string(const json& object, std::string_view path) {
  const json* node = lookup(object, path);
  if (node == nullptr || node->is_null()) return std::nullopt;
  if (node->is_string()) return node->get<std::string>();
  if (node->is_number()) return node->dump();
  return std::nullopt;
}

class Extractor {
 public:
  Extractor(const FieldMap& fields, const LabelSchema* schema, JsonlResult& out)
      : fields_(fields), schema_(schema), out_(out) {}

  void context(const json& paper, const json& item, std::size_t line, std::optional<std::size_t> index) {
    auto skip = [&](std::string reason) { out_.skipped.push_back({line, index, std::move(reason)}); };
    if (!item.is_object()) return skip("context entry is not a JSON object");

    CitationRecord r;
    if (fields_.record_id.empty()) {
      r.record_id = "L" + std::to_string(line);
      if (index) r.record_id += "." + std::to_string(*index);
    } else {
      auto id = lookup_string(item, fields_.record_id);
      if (!id) return skip("missing field '" + fields_.record_id + "'");
      r.record_id = std::move(*id);
    }

    auto citing = lookup_string(item, fields_.citing_id);
    if (!citing && &paper != &item) citing = lookup_string(paper, fields_.citing_id);
    if (!citing) return skip("missing field '" + fields_.citing_id + "'");
    auto cited = lookup_string(item, fields_.cited_id);
    if (!cited) return skip("unresolved cited paper (missing field '" + fields_.cited_id + "')");
    auto context = lookup_string(item, fields_.context);
    if (!context) return skip("missing field '" + fields_.context + "'");

    r.citing_id = std::move(*citing);
    r.cited_id = std::move(*cited);
    r.context = std::move(*context);
    r.section = lookup_string(item, fields_.section);

    if (!fields_.intent.empty()) {
      if (auto label = lookup_string(item, fields_.intent)) {
        if (schema_ == nullptr) return skip("intent field present but no label schema given");
        auto idx = schema_->index_of(*label);
        if (!idx) return skip("unknown intent label '" + *label + "'");
        r.gold_intent = *idx;
      }
    }
    if (!ids_.insert(r.record_id).second) return skip("duplicate record_id '" + r.record_id + "'");
    out_.records.push_back(std::move(r));
  }

 private:
  const FieldMap& fields_;
  const LabelSchema* schema_;
  JsonlResult& out_;
  std::unordered_set<std::string> ids_;
};

}  // namespace

JsonlResult parse_jsonl(std::istream& in, const FieldMap& fields, const LabelSchema* schema) {
  JsonlResult result;
  Extractor extract(fields, schema, result);
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.find_first_not_of(" \t") == std::string::npos) continue;
    ++result.lines;

    json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) {
      result.skipped.push_back({line, std::nullopt, "malformed JSON"});
      continue;
    }
    if (!doc.is_object()) {
      result.skipped.push_back({line, std::nullopt, "line is not a JSON object"});
      continue;
    }
    if (fields.contexts.empty()) {
      extract.context(doc, doc, line, std::nullopt);
      continue;
    }
    const json* items = lookup(doc, fields.contexts);
    if (items == nullptr || !items->is_array()) {
      result.skipped.push_back({line, std::nullopt, "missing array '" + fields.contexts + "'"});
      continue;
    }
    for (std::size_t i = 0; i < items->size(); ++i) extract.context(doc, (*items)[i], line, i);
  }
  return result;
}

void write_skip_report(std::span<const SkipEntry> skipped, std::ostream& out) {
  CsvWriter csv(out);
  csv.row({"line", "item", "reason"});
  for (const auto& s : skipped) {
    csv.field(std::to_string(s.line)).field(s.item ? std::to_string(*s.item) : std::string()).field(s.reason);
    csv.end_row();
  }
}

}  // namespace citenet::ingest
