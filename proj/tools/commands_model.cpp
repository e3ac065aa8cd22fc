#include <filesystem>
#include <iostream>

#include "cli_support.hpp"
#include "citenet/common/csv.hpp"
#include "citenet/common/error.hpp"
#include "citenet/common/numfmt.hpp"
#include "citenet/graph/graph_io.hpp"
#include "citenet/ingest/citation_record.hpp"
#include "citenet/ingest/embeddings.hpp"
#include "citenet/ingest/label_schema.hpp"
#include "citenet/ingest/split.hpp"
#include "citenet/ssgan/checkpoint.hpp"
#include "citenet/ssgan/classify.hpp"
#include "citenet/ssgan/evaluate.hpp"
#include "citenet/ssgan/train.hpp"

namespace citenet::tool {

namespace fs = std::filesystem;

namespace {

struct TrainArgs {
  std::shared_ptr<ConfigLayers> layers = std::make_shared<ConfigLayers>();
  std::string embeddings, schema, split, out_model, log;
  bool keep_generator = false;
};

int run_train(const TrainArgs& a) {
  const auto config = resolve(*a.layers);
  if (!config.has_value("seed")) throw ValidationError("train requires --seed");
  const auto train_config = config.train_config();
  const auto schema = ingest::LabelSchema::load(a.schema);
  const auto embeddings = ingest::read_embeddings(a.embeddings);
  const auto split = ingest::read_split(a.split);
  for (const auto& [id, intent] : split.gold) {
    if (intent >= schema.size()) {
      throw ValidationError("split gold intent " + std::to_string(intent) + " for '" + id + "' is outside the schema");
    }
  }
  const auto arch = config.architecture(schema.size(), embeddings.dim());
  const auto objective = config.text("objective") == "supervised" ? ssgan::Objective::supervised_only
                                                                  : ssgan::Objective::semi_supervised;
  auto model = ssgan::make_model(schema, arch, train_config.seed);
  auto result = ssgan::train(std::move(model), split, embeddings, train_config, objective);

  ssgan::save_checkpoint(result.model, a.out_model, a.keep_generator);
  write_resolved(config, a.out_model);
  if (!a.log.empty()) ssgan::write_train_log(result.log, fs::path(a.log));
  std::cout << "epochs: " << result.log.size() << '\n';
  if (result.best_epoch) {
    std::cout << "best epoch: " << *result.best_epoch
              << "\nbest dev macro-F1: " << format_real(result.log[*result.best_epoch - 1].dev_macro_f1) << '\n';
  }
  return 0;
}

struct ClassifyArgs {
  std::shared_ptr<ConfigLayers> layers = std::make_shared<ConfigLayers>();
  std::string model, embeddings, records, out, predictions;
};

int run_classify(const ClassifyArgs& a) {
  const auto config = resolve(*a.layers);
  const auto model = ssgan::load_checkpoint(a.model);
  const auto embeddings = ingest::read_embeddings(a.embeddings);
  const auto records = ingest::read_csv(fs::path(a.records));
  const auto predictions = ssgan::classify(model, embeddings);

  std::vector<graph::CitationEdge> edges;
  edges.reserve(records.size());
  std::vector<ssgan::RecordPrediction> kept;
  kept.reserve(records.size());
  for (const auto& r : records) {
    const auto row = embeddings.find(r.record_id);
    if (!row) throw ValidationError("record '" + r.record_id + "' has no embedding");
    const auto& p = predictions[*row].prediction;
    edges.push_back({r.citing_id, r.cited_id, static_cast<std::uint32_t>(p.intent), p.confidence});
    kept.push_back(predictions[*row]);
  }
  graph::write_edge_csv(edges, model.schema.labels(), fs::path(a.out));
  if (!a.predictions.empty()) ssgan::write_predictions(kept, model.schema, a.predictions);
  write_resolved(config, a.out);
  if (embeddings.size() > records.size()) {
    std::cerr << "note: " << embeddings.size() - records.size() << " embeddings have no record and were ignored\n";
  }
  std::cout << "classified: " << edges.size() << '\n';
  return 0;
}

struct EvalArgs {
  std::shared_ptr<ConfigLayers> layers = std::make_shared<ConfigLayers>();
  std::string pred, gold, schema, format = "text", out;
  bool micro = false;
};

int run_eval(const EvalArgs& a) {
  const auto config = resolve(*a.layers);
  const auto schema = ingest::LabelSchema::load(a.schema);
  const auto predicted = ssgan::read_predictions(a.pred, schema);
  ssgan::LabelMap gold;
  for (const auto& r : ingest::read_csv(fs::path(a.gold), schema.size())) {
    if (!r.gold_intent) throw ValidationError("gold record '" + r.record_id + "' has no gold_intent");
    gold.emplace(r.record_id, *r.gold_intent);
  }
  const auto report = ssgan::evaluate(predicted, gold, schema.size());
  const auto text = a.format == "json" ? ssgan::format_json(report, schema) : ssgan::format_text(report, schema, a.micro);
  std::cout << text;
  if (!text.empty() && text.back() != '\n') std::cout << '\n';
  if (!a.out.empty()) {
    auto out = open_output(a.out, true);
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
    write_resolved(config, a.out);
  }
  return 0;
}

}  // namespace

void register_model_commands(CLI::App& app, Command& slot) {
  {
    auto args = std::make_shared<TrainArgs>();
    auto* sub = app.add_subcommand("train", "train the semi-supervised adversarial intent classifier");
    sub->add_option("--embeddings", args->embeddings, "CEMB embeddings keyed by record_id")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--schema", args->schema, "label schema file")->required()->check(CLI::ExistingFile);
    sub->add_option("--split", args->split, "split CSV from the split subcommand")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out-model", args->out_model, "checkpoint output")->required();
    sub->add_option("--log", args->log, "per-epoch loss and dev macro-F1 CSV");
    sub->add_flag("--keep-generator", args->keep_generator, "store the generator in the checkpoint as well");
    add_config_options(sub, args->layers, true);
    add_key_flag(sub, args->layers, "--seed", "seed");
    add_key_flag(sub, args->layers, "--objective", "objective");
    add_key_flag(sub, args->layers, "--epochs", "epochs");
    add_key_flag(sub, args->layers, "--batch-size", "batch_size");
    add_key_flag(sub, args->layers, "--lr-discriminator", "lr_discriminator");
    add_key_flag(sub, args->layers, "--lr-generator", "lr_generator");
    add_key_flag(sub, args->layers, "--adam-epsilon", "adam_epsilon");
    add_key_flag(sub, args->layers, "--warmup-proportion", "warmup_proportion");
    add_key_flag(sub, args->layers, "--noise-dim", "noise_dim");
    add_key_flag(sub, args->layers, "--generator-layers", "generator_hidden_layers");
    add_key_flag(sub, args->layers, "--discriminator-layers", "discriminator_hidden_layers");
    add_key_flag(sub, args->layers, "--hidden-width", "hidden_width");
    add_key_flag(sub, args->layers, "--dropout", "dropout_rate");
    on_selected(sub, slot, [args] { return run_train(*args); });
  }
  {
    auto args = std::make_shared<ClassifyArgs>();
    auto* sub = app.add_subcommand("classify", "label every citation context and emit an intent edge list");
    sub->add_option("--model", args->model, "checkpoint from train")->required()->check(CLI::ExistingFile);
    sub->add_option("--embeddings", args->embeddings, "CEMB embeddings keyed by record_id")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--records", args->records, "records CSV giving citing and cited IDs per record_id")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", args->out, "edge-list CSV output (citing_id,cited_id,intent,confidence)")->required();
    sub->add_option("--predictions", args->predictions, "per-record CSV (record_id,intent,confidence) for eval");
    add_config_options(sub, args->layers);
    on_selected(sub, slot, [args] { return run_classify(*args); });
  }
  {
    auto args = std::make_shared<EvalArgs>();
    auto* sub = app.add_subcommand("eval", "score predictions against gold labels");
    sub->add_option("--pred", args->pred, "predictions CSV from classify --predictions")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--gold", args->gold, "records CSV with gold_intent filled")->required()->check(CLI::ExistingFile);
    sub->add_option("--schema", args->schema, "label schema file")->required()->check(CLI::ExistingFile);
    sub->add_option("--format", args->format, "report format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    sub->add_flag("--micro", args->micro, "headline micro-F1 instead of macro-F1 in the text report");
    sub->add_option("--out", args->out, "also write the report to this file");
    add_config_options(sub, args->layers);
    on_selected(sub, slot, [args] { return run_eval(*args); });
  }
}

}  // namespace citenet::tool
