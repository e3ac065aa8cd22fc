#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace citenet::ingest {

/// Dense f32 vectors of a fixed dimension keyed by record ID. Row order is
/// the insertion order and is preserved by the CEMB codec.
class EmbeddingSet {
 public:
  using RowMap = Eigen::Map<const Eigen::VectorXf>;

  explicit EmbeddingSet(std::size_t dim);

  /// Throws ValidationError on dimension mismatch, non-finite values, or a duplicate ID.
  void add(std::string id, std::span<const float> values);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }

  const std::string& id(std::size_t row) const { return ids_.at(row); }
  const std::vector<std::string>& ids() const { return ids_; }
  RowMap row(std::size_t index) const;
  std::optional<std::size_t> find(std::string_view id) const;

  bool operator==(const EmbeddingSet& other) const;

 private:
  std::size_t dim_;
  std::vector<std::string> ids_;
  std::vector<float> values_;
  std::unordered_map<std::string, std::size_t> index_;
};

namespace cemb {
inline constexpr char kMagic[4] = {'C', 'E', 'M', 'B'};
inline constexpr std::uint32_t kVersion = 1;
inline constexpr std::size_t kHeaderBytes = 20;
}  // namespace cemb

std::vector<unsigned char> encode_embeddings(const EmbeddingSet& set);

/// Throws FormatError on bad magic/version, CorruptionError (with byte offset)
/// on truncation or trailing bytes, ValidationError naming the record on
/// non-finite values.
EmbeddingSet decode_embeddings(std::span<const unsigned char> bytes);

void write_embeddings(const EmbeddingSet& set, const std::filesystem::path& path);
EmbeddingSet read_embeddings(const std::filesystem::path& path);

}  // namespace citenet::ingest
