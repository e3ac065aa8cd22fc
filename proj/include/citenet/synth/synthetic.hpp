#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <vector>

#include "citenet/graph/citation_graph.hpp"
#include "citenet/ingest/citation_record.hpp"
#include "citenet/ingest/embeddings.hpp"
#include "citenet/ingest/label_schema.hpp"

namespace citenet::synth {

/// Labeled records plus their embeddings.
struct LabeledData {
  ingest::LabelSchema schema;
  std::vector<ingest::CitationRecord> records;
  ingest::EmbeddingSet embeddings;
};

/// Gaussian classes in R^dim. Class centers sit at `separation` along
/// random orthogonal-ish directions; every point gets isotropic unit noise
/// plus `nuisance_scale` extra spread along a shared class-independent
/// direction, which makes the few labeled points a poor guide to the boundary.
struct BlobOptions {
  std::size_t classes = 3;
  std::size_t dim = 16;
  std::size_t points = 600;
  double separation = 3.0;
  double nuisance_scale = 4.0;
  std::uint64_t seed = 1;
};

LabeledData make_blobs(const BlobOptions& options);

/// Citation corpus with community structure. Papers join communities of
/// heavy-tailed size and cite earlier papers mostly inside their community
/// with preferential attachment; each citation carries one or more contexts
/// whose intents follow `intent_weights`. Context embeddings are noisy class
/// centers so a classifier can recover intents.
struct CorpusOptions {
  std::size_t papers = 3000;
  double mean_references = 1.2;
  double cross_community = 0.02;
  double extra_context = 0.15;  // chance of each additional context on a citation
  std::vector<double> intent_weights = {0.57, 0.40, 0.03};
  std::size_t dim = 16;
  double separation = 4.0;
  std::uint64_t seed = 7;
};

/// Labels: background, method, result (first three), extended by "intentN" names.
LabeledData make_corpus(const CorpusOptions& options);

/// Citation edges with each record's gold intent and confidence 1.
std::vector<graph::CitationEdge> gold_edges(const std::vector<ingest::CitationRecord>& records);

/// One flat JSON object per record (record_id, citing_id, cited_id, section, context, intent).
void write_jsonl(const LabeledData& data, std::ostream& out);

}  // namespace citenet::synth
