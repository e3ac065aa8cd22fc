#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "citenet/ingest/citation_record.hpp"

namespace citenet::ingest {

/// Record IDs partitioned for training. `gold` holds labels for labeled_train,
/// dev and test; unlabeled_train IDs are deliberately absent from it.
struct DatasetSplit {
  std::vector<std::string> labeled_train;
  std::vector<std::string> unlabeled_train;
  std::vector<std::string> dev;
  std::vector<std::string> test;
  std::unordered_map<std::string, std::size_t> gold;

  bool operator==(const DatasetSplit&) const = default;
};

struct SplitOptions {
  double labeled_fraction = 1.0;  // of the records left for training, in (0, 1]
  double dev_fraction = 0.0;      // of all gold records
  double test_fraction = 0.0;     // of all gold records
  std::uint64_t seed = 0;
};

/// Stratified, seed-deterministic split. Each partition's size is rounded
/// once, then shared across classes by largest remainder on the full-data
/// class proportions, so every class count is within one record of its
/// proportional quota. Records without a gold intent go to
/// unlabeled_train. Throws ParameterError when a class would get no labeled
/// example or a class has no gold records at all.
DatasetSplit make_split(std::span<const CitationRecord> records, std::size_t num_classes, const SplitOptions& options);

/// Keeps an official train/dev/test division as-is and only masks labels
/// inside `train` (stratified by class).
DatasetSplit make_split(std::span<const CitationRecord> train, std::span<const CitationRecord> dev,
                        std::span<const CitationRecord> test, std::size_t num_classes, double labeled_fraction,
                        std::uint64_t seed);

/// Throws ValidationError if partitions overlap or a labeled/dev/test ID lacks a gold label.
void validate_split(const DatasetSplit& split);

/// CSV `record_id,partition,gold_intent`; partition is one of
/// labeled, unlabeled, dev, test.
void write_split(const DatasetSplit& split, const std::filesystem::path& path);
DatasetSplit read_split(const std::filesystem::path& path);

}  // namespace citenet::ingest
