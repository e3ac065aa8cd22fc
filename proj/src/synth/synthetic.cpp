#include "citenet/synth/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "citenet/common/error.hpp"
#include "citenet/common/rng.hpp"
#include "json.hpp"

namespace citenet::synth {

namespace {

std::vector<std::string> intent_names(std::size_t k) {
  std::vector<std::string> names = {"background", "method", "result"};
  names.resize(std::min<std::size_t>(k, 3));
  for (std::size_t i = names.size(); i < k; ++i) names.push_back("intent" + std::to_string(i));
  return names;
}

std::vector<std::vector<float>> class_centers(std::size_t k, std::size_t dim, double separation, Rng& rng) {
  std::vector<std::vector<float>> centers(k, std::vector<float>(dim));
  for (auto& c : centers) {
    double norm = 0.0;
    std::vector<double> dir(dim);
    for (auto& d : dir) {
      d = rng.normal();
      norm += d * d;
    }
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < dim; ++i) c[i] = static_cast<float>(separation * dir[i] / norm);
  }
  return centers;
}

std::size_t sample_weighted(const std::vector<double>& weights, Rng& rng) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  double u = rng.uniform() * total;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (u < weights[i]) return i;
    u -= weights[i];
  }
  return weights.size() - 1;
}

std::string padded(std::string_view prefix, std::size_t n, std::size_t width) {
  auto digits = std::to_string(n);
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return std::string(prefix) + digits;
}

}  // namespace

LabeledData make_blobs(const BlobOptions& o) {
  if (o.classes < 2 || o.dim == 0 || o.points < o.classes) throw ParameterError("blob options out of range");
  Rng rng(o.seed);
  const auto centers = class_centers(o.classes, o.dim, o.separation, rng);
  std::vector<double> nuisance(o.dim);
  double norm = 0.0;
  for (auto& d : nuisance) {
    d = rng.normal();
    norm += d * d;
  }
  for (auto& d : nuisance) d /= std::sqrt(norm);

  LabeledData data{ingest::LabelSchema(intent_names(o.classes)), {}, ingest::EmbeddingSet(o.dim)};
  std::vector<float> x(o.dim);
  for (std::size_t i = 0; i < o.points; ++i) {
    const std::size_t c = i % o.classes;
    const double shift = o.nuisance_scale * rng.normal();
    for (std::size_t d = 0; d < o.dim; ++d) {
      x[d] = static_cast<float>(centers[c][d] + rng.normal() + shift * nuisance[d]);
    }
    ingest::CitationRecord r;
    r.record_id = padded("b", i, 4);
    r.citing_id = padded("P", i, 4);
    r.cited_id = padded("Q", i % 17, 2);
    r.context = "synthetic blob point " + std::to_string(i);
    r.gold_intent = c;
    data.embeddings.add(r.record_id, x);
    data.records.push_back(std::move(r));
  }
  return data;
}

LabeledData make_corpus(const CorpusOptions& o) {
  const auto k = o.intent_weights.size();
  if (k < 2 || o.papers < 2 || o.dim == 0) throw ParameterError("corpus options out of range");
  Rng rng(o.seed);
  const auto centers = class_centers(k, o.dim, o.separation, rng);

  // Community sizes follow a rough power law; the first community is large.
  std::vector<std::size_t> community(o.papers);
  {
    std::size_t next = 0, id = 0;
    while (next < o.papers) {
      const double u = std::max(rng.uniform(), 1e-9);
      auto size = static_cast<std::size_t>(std::ceil(2.0 / std::pow(u, 0.8)));
      if (id == 0) size = o.papers * 3 / 4;
      size = std::min(size, o.papers - next);
      for (std::size_t i = 0; i < size; ++i) community[next + i] = id;
      next += size;
      ++id;
    }
    // Interleave papers of different communities in time.
    rng.shuffle(std::span(community));
  }

  std::vector<std::vector<std::size_t>> members;
  std::vector<double> weight(o.papers, 1.0);
  LabeledData data{ingest::LabelSchema(intent_names(k)), {}, ingest::EmbeddingSet(o.dim)};
  std::vector<float> x(o.dim);
  std::size_t context_no = 0;
  static constexpr const char* kSections[] = {"Introduction", "Related Work", "Methods", "Experiments", "Discussion"};

  auto pick = [&](const std::vector<std::size_t>& pool) {
    double total = 0.0;
    for (auto p : pool) total += weight[p];
    double u = rng.uniform() * total;
    for (auto p : pool) {
      if (u < weight[p]) return p;
      u -= weight[p];
    }
    return pool.back();
  };

  std::vector<std::size_t> all_so_far;
  for (std::size_t paper = 0; paper < o.papers; ++paper) {
    const auto c = community[paper];
    if (members.size() <= c) members.resize(c + 1);
    const auto& pool = members[c];
    // Geometric number of references with the requested mean.
    std::size_t refs = 0;
    const double stop = 1.0 / (1.0 + o.mean_references);
    while (!rng.bernoulli(stop)) ++refs;

    std::vector<std::size_t> cited;
    for (std::size_t r = 0; r < refs; ++r) {
      const bool cross = rng.bernoulli(o.cross_community) && !all_so_far.empty();
      if (!cross && pool.empty()) continue;
      const auto target = cross ? all_so_far[rng.index(all_so_far.size())] : pick(pool);
      if (std::find(cited.begin(), cited.end(), target) != cited.end()) continue;
      cited.push_back(target);
    }
    for (auto target : cited) {
      weight[target] += 1.0;
      std::size_t contexts = 1;
      while (rng.bernoulli(o.extra_context)) ++contexts;
      for (std::size_t ctx = 0; ctx < contexts; ++ctx) {
        const auto intent = sample_weighted(o.intent_weights, rng);
        ingest::CitationRecord rec;
        rec.record_id = padded("c", context_no++, 6);
        rec.citing_id = padded("P", paper, 5);
        rec.cited_id = padded("P", target, 5);
        rec.section = kSections[rng.index(std::size(kSections))];
        rec.context = "As shown in [" + rec.cited_id + "], the " + data.schema.name(intent) + " evidence supports it.";
        rec.gold_intent = intent;
        for (std::size_t d = 0; d < o.dim; ++d) x[d] = static_cast<float>(centers[intent][d] + rng.normal());
        data.embeddings.add(rec.record_id, x);
        data.records.push_back(std::move(rec));
      }
    }
    members[c].push_back(paper);
    all_so_far.push_back(paper);
  }
  return data;
}

std::vector<graph::CitationEdge> gold_edges(const std::vector<ingest::CitationRecord>& records) {
  std::vector<graph::CitationEdge> edges;
  edges.reserve(records.size());
  for (const auto& r : records) {
    std::optional<std::uint32_t> intent;
    if (r.gold_intent) intent = static_cast<std::uint32_t>(*r.gold_intent);
    edges.push_back({r.citing_id, r.cited_id, intent, 1.0});
  }
  return edges;
}

void write_jsonl(const LabeledData& data, std::ostream& out) {
  for (const auto& r : data.records) {
    nlohmann::ordered_json j;
    j["record_id"] = r.record_id;
    j["citing_id"] = r.citing_id;
    j["cited_id"] = r.cited_id;
    if (r.section) j["section"] = *r.section;
    j["context"] = r.context;
    if (r.gold_intent) j["intent"] = data.schema.name(*r.gold_intent);
    out << j.dump() << '\n';
  }
}

}  // namespace citenet::synth
