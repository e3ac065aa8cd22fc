#include "citenet/ssgan/classify.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "citenet/common/csv.hpp"
#include "citenet/common/error.hpp"
#include "citenet/common/numfmt.hpp"

namespace citenet::ssgan {

Matrix<double> to_batch(const ingest::EmbeddingSet& embeddings, std::span<const std::size_t> rows) {
  Matrix<double> x(static_cast<Eigen::Index>(embeddings.dim()), static_cast<Eigen::Index>(rows.size()));
  for (std::size_t j = 0; j < rows.size(); ++j) x.col(static_cast<Eigen::Index>(j)) = embeddings.row(rows[j]).cast<double>();
  return x;
}

Matrix<double> to_batch(const ingest::EmbeddingSet& embeddings) {
  std::vector<std::size_t> rows(embeddings.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return to_batch(embeddings, rows);
}

std::vector<RecordPrediction> classify(const GanModel& model, const ingest::EmbeddingSet& embeddings) {
  if (embeddings.dim() != static_cast<std::size_t>(model.discriminator.input_dim())) {
    throw ValidationError("embeddings have dimension " + std::to_string(embeddings.dim()) + " but the model expects " +
                          std::to_string(model.discriminator.input_dim()));
  }
  std::vector<RecordPrediction> result;
  result.reserve(embeddings.size());
  constexpr std::size_t kChunk = 1024;
  std::vector<std::size_t> rows;
  for (std::size_t start = 0; start < embeddings.size(); start += kChunk) {
    const auto end = std::min(embeddings.size(), start + kChunk);
    rows.resize(end - start);
    std::iota(rows.begin(), rows.end(), start);
    const auto preds = predict(model.discriminator, to_batch(embeddings, rows));
    for (std::size_t i = 0; i < preds.size(); ++i) result.push_back({embeddings.id(start + i), preds[i]});
  }
  return result;
}

void write_predictions(std::span<const RecordPrediction> predictions, const ingest::LabelSchema& schema,
                       const std::filesystem::path& path) {
  std::ostringstream buf;
  CsvWriter w(buf);
  w.row({"record_id", "intent", "confidence"});
  for (const auto& p : predictions) {
    w.row({p.record_id, schema.name(p.prediction.intent), format_real(p.prediction.confidence)});
  }
  auto out = open_output(path, true);
  out << buf.str();
  if (!out) throw IoError("failed writing " + path.string());
}

std::unordered_map<std::string, std::size_t> read_predictions(const std::filesystem::path& path,
                                                              const ingest::LabelSchema& schema) {
  auto in = open_input(path, true);
  CsvReader r(in);
  CsvRow row;
  const auto source = path.string();
  if (!r.next(row)) throw FormatError(source + ": empty predictions file");
  expect_header(row, {"record_id", "intent", "confidence"}, source);
  std::unordered_map<std::string, std::size_t> out;
  while (r.next(row)) {
    const auto where = source + ":" + std::to_string(r.row_line());
    if (row.size() != 3) throw FormatError(where + ": expected 3 fields");
    const auto intent = schema.index_of(row[1].text);
    if (!intent) throw ValidationError(where + ": unknown intent '" + row[1].text + "'");
    if (!out.emplace(row[0].text, *intent).second) {
      throw ValidationError(where + ": duplicate record_id '" + row[0].text + "'");
    }
  }
  return out;
}

}  // namespace citenet::ssgan
