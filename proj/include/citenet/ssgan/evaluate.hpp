#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "citenet/ingest/label_schema.hpp"

namespace citenet::ssgan {

struct ClassScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;  // gold count
};

/// Scores are fractions in [0, 1]. Confusion rows are gold classes, columns
/// predicted classes.
struct EvalReport {
  std::vector<ClassScores> per_class;
  double macro_f1 = 0.0;
  double micro_f1 = 0.0;  // equals accuracy for single-label data
  Eigen::Matrix<std::size_t, Eigen::Dynamic, Eigen::Dynamic> confusion;
  std::size_t n_examples = 0;

  std::size_t errors() const;
};

using LabelMap = std::unordered_map<std::string, std::size_t>;

/// Throws ValidationError listing IDs present on one side only.
EvalReport evaluate(const LabelMap& predictions, const LabelMap& gold, std::size_t num_classes);

/// Percentages with two decimals plus the confusion matrix.
std::string format_text(const EvalReport& report, const ingest::LabelSchema& schema, bool micro = false);
std::string format_json(const EvalReport& report, const ingest::LabelSchema& schema);

}  // namespace citenet::ssgan
