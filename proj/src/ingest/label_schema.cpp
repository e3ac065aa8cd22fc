#include "citenet/ingest/label_schema.hpp"

#include <algorithm>
#include <unordered_set>

#include "citenet/common/csv.hpp"
#include "citenet/common/error.hpp"

namespace citenet::ingest {

LabelSchema::LabelSchema(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.size() < 2) throw ValidationError("label schema needs at least 2 labels");
  std::unordered_set<std::string> seen;
  for (const auto& label : labels_) {
    if (label.empty()) throw ValidationError("label schema contains an empty label");
    if (label == kFakeLabel) throw ValidationError("label schema may not use the reserved label " + std::string(kFakeLabel));
    if (!seen.insert(label).second) throw ValidationError("duplicate label '" + label + "' in schema");
  }
}

LabelSchema LabelSchema::parse(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return LabelSchema(std::move(lines));
}

LabelSchema LabelSchema::load(const std::filesystem::path& path) {
  auto in = open_input(path);
  try {
    return parse(in);
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void LabelSchema::save(const std::filesystem::path& path) const {
  auto out = open_output(path);
  for (const auto& label : labels_) out << label << '\n';
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::optional<std::size_t> LabelSchema::index_of(std::string_view name) const {
  auto it = std::find(labels_.begin(), labels_.end(), name);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

}  // namespace citenet::ingest
