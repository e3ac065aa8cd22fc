#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <unordered_map>
#include <string>
#include <vector>

#include "citenet/ingest/embeddings.hpp"
#include "citenet/ssgan/model.hpp"

namespace citenet::ssgan {

struct Prediction {
  std::size_t intent = 0;
  double confidence = 0.0;  // probability renormalized over the k real classes

  bool operator==(const Prediction&) const = default;
};

/// Inference-mode predictions for each column of `x`. The synthetic class is
/// never predicted; ties resolve to the lowest class index.
template <typename Scalar>
std::vector<Prediction> predict(const Discriminator<Scalar>& d, const Matrix<Scalar>& x) {
  const auto out = discriminator_forward(d, x, false, nullptr);
  const auto& z = out.logits();
  const Eigen::Index k = d.num_classes();
  std::vector<Prediction> result(static_cast<std::size_t>(x.cols()));
  for (Eigen::Index j = 0; j < z.cols(); ++j) {
    Eigen::Index best = 0;
    for (Eigen::Index c = 1; c < k; ++c) {
      if (z(c, j) > z(best, j)) best = c;
    }
    const Scalar m = z(best, j);
    Scalar denom = 0;
    for (Eigen::Index c = 0; c < k; ++c) denom += std::exp(z(c, j) - m);
    result[static_cast<std::size_t>(j)] = {static_cast<std::size_t>(best), static_cast<double>(Scalar(1) / denom)};
  }
  return result;
}

/// Converts embedding rows to a double-precision batch (H x n).
Matrix<double> to_batch(const ingest::EmbeddingSet& embeddings, std::span<const std::size_t> rows);
Matrix<double> to_batch(const ingest::EmbeddingSet& embeddings);

struct RecordPrediction {
  std::string record_id;
  Prediction prediction;
};

/// Classifies every embedding, in file order. Throws ValidationError on a
/// dimension mismatch.
std::vector<RecordPrediction> classify(const GanModel& model, const ingest::EmbeddingSet& embeddings);

/// CSV `record_id,intent,confidence` with intent names from the schema.
void write_predictions(std::span<const RecordPrediction> predictions, const ingest::LabelSchema& schema,
                       const std::filesystem::path& path);
/// Reads a predictions CSV back to record_id -> intent index; unknown names
/// and duplicate IDs throw ValidationError.
std::unordered_map<std::string, std::size_t> read_predictions(const std::filesystem::path& path,
                                                              const ingest::LabelSchema& schema);

}  // namespace citenet::ssgan
