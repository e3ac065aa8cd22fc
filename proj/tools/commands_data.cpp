#include <filesystem>
#include <fstream>
#include <iostream>

#include "cli_support.hpp"
#include "citenet/common/csv.hpp"
#include "citenet/common/error.hpp"
#include "citenet/common/numfmt.hpp"
#include "citenet/ingest/citation_record.hpp"
#include "citenet/ingest/embeddings.hpp"
#include "citenet/ingest/jsonl.hpp"
#include "citenet/ingest/label_schema.hpp"
#include "citenet/ingest/split.hpp"
#include "citenet/synth/synthetic.hpp"

namespace citenet::tool {

namespace fs = std::filesystem;

namespace {

struct IngestArgs {
  std::shared_ptr<ConfigLayers> layers = std::make_shared<ConfigLayers>();
  std::string jsonl, csv, out, schema, skip_report;
  std::vector<std::string> fields;
};

void set_field(ingest::FieldMap& map, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ValidationError("--field expects name=key, got '" + assignment + "'");
  const auto name = assignment.substr(0, eq);
  auto key = assignment.substr(eq + 1);
  if (name == "record_id") map.record_id = key;
  else if (name == "citing_id") map.citing_id = key;
  else if (name == "cited_id") map.cited_id = key;
  else if (name == "context") map.context = key;
  else if (name == "section") map.section = key;
  else if (name == "intent") map.intent = key;
  else if (name == "contexts") map.contexts = key;
  else throw ValidationError("--field: unknown field '" + name + "'");
}

int run_ingest(const IngestArgs& a) {
  const auto config = resolve(*a.layers);
  std::optional<ingest::LabelSchema> schema;
  if (!a.schema.empty()) schema = ingest::LabelSchema::load(a.schema);
  std::vector<ingest::CitationRecord> records;
  if (!a.jsonl.empty()) {
    ingest::FieldMap fields;
    if (schema) fields.intent = "intent";
    for (const auto& f : a.fields) set_field(fields, f);
    if (!fields.intent.empty() && !schema) throw ValidationError("--field intent=... requires --schema");
    auto in = open_input(a.jsonl, true);
    auto result = ingest::parse_jsonl(in, fields, schema ? &*schema : nullptr);
    const fs::path report = a.skip_report.empty() ? fs::path(a.out + ".skipped.csv") : fs::path(a.skip_report);
    {
      auto out = open_output(report, true);
      ingest::write_skip_report(result.skipped, out);
    }
    std::cout << "lines: " << result.lines << "\nrecords: " << result.records.size()
              << "\nskipped: " << result.skipped.size() << " (see " << report.string() << ")\n";
    records = std::move(result.records);
  } else {
    if (!a.fields.empty()) throw ValidationError("--field applies to --jsonl input only");
    records = ingest::read_csv(fs::path(a.csv), schema ? std::optional(schema->size()) : std::nullopt);
    std::cout << "records: " << records.size() << '\n';
  }
  ingest::write_csv(records, fs::path(a.out));
  write_resolved(config, a.out);
  return 0;
}

struct SplitArgs {
  std::shared_ptr<ConfigLayers> layers = std::make_shared<ConfigLayers>();
  std::string records, schema, out, train, dev, test;
};

int run_split(const SplitArgs& a) {
  const auto config = resolve(*a.layers);
  if (!config.has_value("seed")) throw ValidationError("split needs a seed (--seed or config key seed)");
  const auto seed = static_cast<std::uint64_t>(config.integer("seed"));
  const auto schema = ingest::LabelSchema::load(a.schema);
  const auto k = schema.size();
  ingest::DatasetSplit split;
  if (!a.records.empty()) {
    if (!a.train.empty() || !a.dev.empty() || !a.test.empty()) {
      throw ValidationError("--records cannot be combined with --train/--dev/--test");
    }
    const auto records = ingest::read_csv(fs::path(a.records), k);
    ingest::SplitOptions options;
    options.labeled_fraction = config.real("labeled_fraction");
    options.dev_fraction = config.real("dev_fraction");
    options.test_fraction = config.real("test_fraction");
    options.seed = seed;
    split = ingest::make_split(records, k, options);
  } else {
    if (a.train.empty()) throw ValidationError("split needs --records or --train");
    const auto train = ingest::read_csv(fs::path(a.train), k);
    const auto dev = a.dev.empty() ? std::vector<ingest::CitationRecord>{} : ingest::read_csv(fs::path(a.dev), k);
    const auto test = a.test.empty() ? std::vector<ingest::CitationRecord>{} : ingest::read_csv(fs::path(a.test), k);
    split = ingest::make_split(train, dev, test, k, config.real("labeled_fraction"), seed);
  }
  ingest::write_split(split, a.out);
  std::cout << "labeled: " << split.labeled_train.size() << "\nunlabeled: " << split.unlabeled_train.size()
            << "\ndev: " << split.dev.size() << "\ntest: " << split.test.size() << '\n';
  write_resolved(config, a.out);
  return 0;
}

struct SynthArgs {
  std::shared_ptr<ConfigLayers> layers = std::make_shared<ConfigLayers>();
  std::string kind, out_dir;
  std::uint64_t seed = 1;
  std::size_t size = 0;
  std::size_t dim = 16;
};

int run_synth(const SynthArgs& a) {
  const auto config = resolve(*a.layers);
  fs::create_directories(a.out_dir);
  const fs::path dir(a.out_dir);
  const auto data = [&] {
    if (a.kind == "blobs") {
      synth::BlobOptions o;
      o.seed = a.seed;
      o.dim = a.dim;
      if (a.size) o.points = a.size;
      return synth::make_blobs(o);
    }
    synth::CorpusOptions o;
    o.seed = a.seed;
    o.dim = a.dim;
    if (a.size) o.papers = a.size;
    auto corpus = synth::make_corpus(o);
    auto out = open_output(dir / "corpus.jsonl", true);
    synth::write_jsonl(corpus, out);
    return corpus;
  }();
  data.schema.save(dir / "schema.txt");
  ingest::write_csv(data.records, dir / "records.csv");
  ingest::write_embeddings(data.embeddings, dir / "embeddings.cemb");
  write_resolved(config, dir / "records.csv");
  std::cout << "records: " << data.records.size() << "\ndim: " << data.embeddings.dim() << '\n';
  return 0;
}

}  // namespace

void register_data_commands(CLI::App& app, Command& slot) {
  {
    auto args = std::make_shared<IngestArgs>();
    auto* sub = app.add_subcommand("ingest", "normalize citation contexts (JSONL or CSV) into a records CSV");
    auto* jsonl = sub->add_option("--jsonl", args->jsonl, "JSON Lines input, one object per context or per paper")
                      ->check(CLI::ExistingFile);
    auto* csv = sub->add_option("--csv", args->csv, "records CSV input, re-validated and rewritten")
                    ->check(CLI::ExistingFile);
    jsonl->excludes(csv);
    sub->add_option("--out", args->out, "records CSV output")->required();
    sub->add_option("--schema", args->schema, "label schema file; enables reading gold labels from the \"intent\" key")
        ->check(CLI::ExistingFile);
    sub->add_option("--field", args->fields,
                    "map a record field to a JSON key path, as name=key (names: record_id, citing_id, cited_id, "
                    "context, section, intent, contexts); repeatable");
    sub->add_option("--skip-report", args->skip_report, "skipped-line CSV (default <out>.skipped.csv)");
    add_config_options(sub, args->layers);
    on_selected(sub, slot, [args] {
      if (args->jsonl.empty() == args->csv.empty()) throw ValidationError("ingest needs exactly one of --jsonl or --csv");
      return run_ingest(*args);
    });
  }
  {
    auto args = std::make_shared<SplitArgs>();
    auto* sub = app.add_subcommand("split", "partition records into labeled, unlabeled, dev and test sets");
    sub->add_option("--records", args->records, "records CSV to split with stratified sampling")
        ->check(CLI::ExistingFile);
    sub->add_option("--train", args->train, "official train records CSV")->check(CLI::ExistingFile);
    sub->add_option("--dev", args->dev, "official dev records CSV")->check(CLI::ExistingFile);
    sub->add_option("--test", args->test, "official test records CSV")->check(CLI::ExistingFile);
    sub->add_option("--schema", args->schema, "label schema file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", args->out, "split CSV output")->required();
    add_config_options(sub, args->layers);
    add_key_flag(sub, args->layers, "--seed", "seed");
    add_key_flag(sub, args->layers, "--labeled-fraction", "labeled_fraction");
    add_key_flag(sub, args->layers, "--dev-fraction", "dev_fraction");
    add_key_flag(sub, args->layers, "--test-fraction", "test_fraction");
    on_selected(sub, slot, [args] { return run_split(*args); });
  }
  {
    auto args = std::make_shared<SynthArgs>();
    auto* sub = app.add_subcommand("synth", "generate a synthetic benchmark (records, embeddings, schema)");
    sub->add_option("kind", args->kind, "blobs (Gaussian classes) or corpus (citation network)")
        ->required()
        ->check(CLI::IsMember({"blobs", "corpus"}));
    sub->add_option("--out-dir", args->out_dir, "output directory")->required();
    sub->add_option("--seed", args->seed, "generator seed")->capture_default_str();
    sub->add_option("--size", args->size, "points (blobs) or papers (corpus); 0 keeps the default");
    sub->add_option("--dim", args->dim, "embedding dimension")->capture_default_str();
    add_config_options(sub, args->layers);
    on_selected(sub, slot, [args] { return run_synth(*args); });
  }
}

}  // namespace citenet::tool
