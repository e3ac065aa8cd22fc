#include "citenet/ingest/split.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "citenet/common/csv.hpp"
#include "citenet/common/error.hpp"
#include "citenet/common/numfmt.hpp"
#include "citenet/common/rng.hpp"

namespace citenet::ingest {

namespace {

std::size_t rounded_share(std::size_t n, double fraction) {
  return static_cast<std::size_t>(std::llround(static_cast<double>(n) * fraction));
}

// Indices into `records` grouped by gold class, in input order.
std::vector<std::vector<std::size_t>> by_class(std::span<const CitationRecord> records, std::size_t num_classes) {
  std::vector<std::vector<std::size_t>> groups(num_classes);
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& g = records[i].gold_intent;
    if (!g) continue;
    if (*g >= num_classes) throw ValidationError("record '" + records[i].record_id + "' has gold intent outside schema");
    groups[*g].push_back(i);
  }
  for (std::size_t c = 0; c < num_classes; ++c) {
    if (groups[c].empty()) throw ParameterError("class " + std::to_string(c) + " has no gold-labeled records");
  }
  return groups;
}

// Largest-remainder split of `count` across classes in proportion to `sizes`,
// never exceeding `capacity`; remainder ties go to the lower class index.
// Each share lands within one of its exact quota while capacity allows.
std::vector<std::size_t> apportion(std::size_t count, const std::vector<std::size_t>& sizes,
                                   const std::vector<std::size_t>& capacity) {
  const auto k = sizes.size();
  const double total = static_cast<double>(std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}));
  std::vector<std::size_t> out(k, 0);
  std::vector<double> remainder(k, 0.0);
  std::size_t assigned = 0;
  for (std::size_t c = 0; c < k; ++c) {
    const double quota = static_cast<double>(count) * static_cast<double>(sizes[c]) / total;
    out[c] = std::min(static_cast<std::size_t>(std::floor(quota)), capacity[c]);
    remainder[c] = quota - static_cast<double>(out[c]);
    assigned += out[c];
  }
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return remainder[a] > remainder[b]; });
  while (assigned < count) {
    bool progress = false;
    for (auto c : order) {
      if (assigned == count) break;
      if (out[c] < capacity[c]) {
        ++out[c];
        ++assigned;
        progress = true;
      }
    }
    if (!progress) break;
  }
  return out;
}

void emit(std::span<const CitationRecord> records, std::vector<std::size_t> picks, std::vector<std::string>& ids,
          DatasetSplit& split, bool keep_gold) {
  std::sort(picks.begin(), picks.end());
  for (auto i : picks) {
    ids.push_back(records[i].record_id);
    if (keep_gold) split.gold.emplace(records[i].record_id, *records[i].gold_intent);
  }
}

void check_fraction(double f, const char* name, bool allow_zero) {
  if (!(f <= 1.0) || (allow_zero ? f < 0.0 : f <= 0.0)) {
    throw ParameterError(std::string(name) + " out of range: " + format_real(f));
  }
}

}  // namespace

DatasetSplit make_split(std::span<const CitationRecord> records, std::size_t num_classes,
                        const SplitOptions& options) {
  check_fraction(options.labeled_fraction, "labeled_fraction", false);
  check_fraction(options.dev_fraction, "dev_fraction", true);
  check_fraction(options.test_fraction, "test_fraction", true);
  if (options.dev_fraction + options.test_fraction >= 1.0) {
    throw ParameterError("dev_fraction + test_fraction must leave records for training");
  }

  auto groups = by_class(records, num_classes);
  Rng rng(options.seed);
  std::vector<std::size_t> sizes(num_classes), left(num_classes);
  for (std::size_t c = 0; c < num_classes; ++c) {
    rng.shuffle(std::span(groups[c]));
    sizes[c] = left[c] = groups[c].size();
  }
  const std::size_t total = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
  const auto n_test = apportion(rounded_share(total, options.test_fraction), sizes, left);
  for (std::size_t c = 0; c < num_classes; ++c) left[c] -= n_test[c];
  const auto n_dev = apportion(rounded_share(total, options.dev_fraction), sizes, left);
  for (std::size_t c = 0; c < num_classes; ++c) left[c] -= n_dev[c];
  const std::size_t train_total = std::accumulate(left.begin(), left.end(), std::size_t{0});
  const auto n_labeled = apportion(rounded_share(train_total, options.labeled_fraction), sizes, left);

  std::vector<std::size_t> labeled, unlabeled, dev, test;
  for (std::size_t c = 0; c < num_classes; ++c) {
    if (n_labeled[c] == 0) {
      throw ParameterError("labeled_fraction " + format_real(options.labeled_fraction) + " leaves class " +
                           std::to_string(c) + " without labeled examples");
    }
    auto it = groups[c].begin();
    for (auto [part, n] : {std::pair{&test, n_test[c]}, {&dev, n_dev[c]}, {&labeled, n_labeled[c]}}) {
      part->insert(part->end(), it, it + static_cast<std::ptrdiff_t>(n));
      it += static_cast<std::ptrdiff_t>(n);
    }
    unlabeled.insert(unlabeled.end(), it, groups[c].end());
  }
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!records[i].gold_intent) unlabeled.push_back(i);
  }

  DatasetSplit split;
  emit(records, std::move(labeled), split.labeled_train, split, true);
  emit(records, std::move(unlabeled), split.unlabeled_train, split, false);
  emit(records, std::move(dev), split.dev, split, true);
  emit(records, std::move(test), split.test, split, true);
  validate_split(split);
  return split;
}

DatasetSplit make_split(std::span<const CitationRecord> train, std::span<const CitationRecord> dev,
                        std::span<const CitationRecord> test, std::size_t num_classes, double labeled_fraction,
                        std::uint64_t seed) {
  SplitOptions options;
  options.labeled_fraction = labeled_fraction;
  options.seed = seed;
  auto split = make_split(train, num_classes, options);
  auto add_gold = [&](std::span<const CitationRecord> part, std::vector<std::string>& ids, const char* name) {
    for (const auto& r : part) {
      if (!r.gold_intent) throw ValidationError(std::string(name) + " record '" + r.record_id + "' lacks a gold intent");
      ids.push_back(r.record_id);
      split.gold.emplace(r.record_id, *r.gold_intent);
    }
  };
  add_gold(dev, split.dev, "dev");
  add_gold(test, split.test, "test");
  validate_split(split);
  return split;
}

void validate_split(const DatasetSplit& split) {
  std::unordered_set<std::string> seen;
  auto check = [&](const std::vector<std::string>& ids, const char* name, bool needs_gold) {
    for (const auto& id : ids) {
      if (!seen.insert(id).second) throw ValidationError("record '" + id + "' appears in more than one partition");
      if (needs_gold && !split.gold.contains(id)) {
        throw ValidationError(std::string(name) + " record '" + id + "' has no gold intent");
      }
    }
  };
  check(split.labeled_train, "labeled", true);
  check(split.unlabeled_train, "unlabeled", false);
  check(split.dev, "dev", true);
  check(split.test, "test", true);
}

void write_split(const DatasetSplit& split, const std::filesystem::path& path) {
  auto out = open_output(path);
  CsvWriter csv(out);
  csv.row({"record_id", "partition", "gold_intent"});
  auto dump = [&](const std::vector<std::string>& ids, std::string_view name, bool with_gold) {
    for (const auto& id : ids) {
      csv.field(id).field(name).field(with_gold ? std::to_string(split.gold.at(id)) : std::string());
      csv.end_row();
    }
  };
  dump(split.labeled_train, "labeled", true);
  dump(split.unlabeled_train, "unlabeled", false);
  dump(split.dev, "dev", true);
  dump(split.test, "test", true);
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

DatasetSplit read_split(const std::filesystem::path& path) {
  auto in = open_input(path);
  CsvReader reader(in);
  CsvRow row;
  if (!reader.next(row)) throw FormatError(path.string() + ": missing CSV header");
  expect_header(row, {"record_id", "partition", "gold_intent"}, path.string());
  DatasetSplit split;
  while (reader.next(row)) {
    const auto where = path.string() + ":" + std::to_string(reader.row_line());
    if (row.size() != 3) throw FormatError(where + ": expected 3 fields");
    const auto& id = row[0].text;
    const auto& part = row[1].text;
    if (part == "labeled") {
      split.labeled_train.push_back(id);
    } else if (part == "unlabeled") {
      split.unlabeled_train.push_back(id);
    } else if (part == "dev") {
      split.dev.push_back(id);
    } else if (part == "test") {
      split.test.push_back(id);
    } else {
      throw FormatError(where + ": unknown partition '" + part + "'");
    }
    if (!row[2].text.empty() && part != "unlabeled") {
      auto g = parse_int(row[2].text);
      if (!g || *g < 0) throw FormatError(where + ": gold_intent is not a class index");
      split.gold.emplace(id, static_cast<std::size_t>(*g));
    }
  }
  validate_split(split);
  return split;
}

}  // namespace citenet::ingest
