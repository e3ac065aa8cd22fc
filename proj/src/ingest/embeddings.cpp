#include "citenet/ingest/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

#include "citenet/common/binary.hpp"
#include "citenet/common/csv.hpp"
#include "citenet/common/error.hpp"

namespace citenet::ingest {

EmbeddingSet::EmbeddingSet(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw ValidationError("embedding dimension must be positive");
}

void EmbeddingSet::add(std::string id, std::span<const float> values) {
  if (values.size() != dim_) {
    throw ValidationError("embedding '" + id + "' has " + std::to_string(values.size()) + " values, expected " +
                          std::to_string(dim_));
  }
  if (!std::all_of(values.begin(), values.end(), [](float v) { return std::isfinite(v); })) {
    throw ValidationError("embedding '" + id + "' contains a non-finite value");
  }
  if (index_.contains(id)) throw ValidationError("duplicate embedding id '" + id + "'");
  index_.emplace(id, ids_.size());
  ids_.push_back(std::move(id));
  values_.insert(values_.end(), values.begin(), values.end());
}

EmbeddingSet::RowMap EmbeddingSet::row(std::size_t index) const {
  if (index >= ids_.size()) throw ParameterError("embedding row out of range");
  return RowMap(values_.data() + index * dim_, static_cast<Eigen::Index>(dim_));
}

std::optional<std::size_t> EmbeddingSet::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool EmbeddingSet::operator==(const EmbeddingSet& other) const {
  return dim_ == other.dim_ && ids_ == other.ids_ &&
         std::memcmp(values_.data(), other.values_.data(), values_.size() * sizeof(float)) == 0;
}

std::vector<unsigned char> encode_embeddings(const EmbeddingSet& set) {
  ByteWriter w;
  w.raw(std::string_view(cemb::kMagic, 4));
  w.u32(cemb::kVersion);
  w.u32(static_cast<std::uint32_t>(set.dim()));
  w.u64(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    const auto& id = set.id(i);
    w.u32(static_cast<std::uint32_t>(id.size()));
    w.raw(id);
    const auto row = set.row(i);
    for (Eigen::Index j = 0; j < row.size(); ++j) w.f32(row[j]);
  }
  return w.take();
}

EmbeddingSet decode_embeddings(std::span<const unsigned char> bytes) {
  ByteReader r(bytes);
  const auto magic = r.raw(4, "magic");
  if (std::memcmp(magic.data(), cemb::kMagic, 4) != 0) throw FormatError("not a CEMB file: bad magic");
  const auto version = r.u32("version");
  if (version != cemb::kVersion) throw FormatError("unsupported CEMB version " + std::to_string(version));
  const auto dim = r.u32("dim");
  const auto count = r.u64("count");
  if (dim == 0) throw FormatError("CEMB header declares dim 0");

  EmbeddingSet set(dim);
  std::vector<float> values(dim);
  for (std::uint64_t row = 0; row < count; ++row) {
    const auto row_offset = r.offset();
    if (r.at_end()) {
      throw CorruptionError("CEMB payload truncated: header declares " + std::to_string(count) + " rows, found " +
                                std::to_string(row),
                            row_offset);
    }
    const auto id_len = r.u32("record id length");
    auto id = r.raw(id_len, "record id");
    for (auto& v : values) v = r.f32("embedding values of '" + id + "'");
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (!std::isfinite(values[j])) {
        throw ValidationError("non-finite value in embedding '" + id + "' at component " + std::to_string(j));
      }
    }
    set.add(std::move(id), values);
  }
  if (!r.at_end()) throw CorruptionError("trailing bytes after last CEMB record", r.offset());
  return set;
}

void write_embeddings(const EmbeddingSet& set, const std::filesystem::path& path) {
  const auto bytes = encode_embeddings(set);
  auto out = open_output(path, true);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

EmbeddingSet read_embeddings(const std::filesystem::path& path) {
  auto in = open_input(path, true);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return decode_embeddings(bytes);
  } catch (const CorruptionError& e) {
    throw CorruptionError(path.string() + ": " + e.detail(), e.offset());
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace citenet::ingest
