#include "citenet/ssgan/train.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "citenet/common/csv.hpp"
#include "citenet/common/numfmt.hpp"
#include "citenet/ssgan/classify.hpp"
#include "citenet/ssgan/evaluate.hpp"
#include "citenet/ssgan/losses.hpp"

namespace citenet::ssgan {

void TrainConfig::validate() const {
  if (batch_size == 0) throw ParameterError("batch_size must be positive");
  if (!(lr_discriminator > 0.0) || !(lr_generator > 0.0)) throw ParameterError("learning rates must be positive");
  if (!(adam_epsilon > 0.0)) throw ParameterError("adam_epsilon must be positive");
  if (!(warmup_proportion >= 0.0 && warmup_proportion < 1.0)) {
    throw ParameterError("warmup_proportion must lie in [0, 1)");
  }
}

Preset scicite_preset() {
  Preset p;
  p.arch.noise_dim = 768;
  p.arch.generator_hidden_layers = 1;
  p.arch.discriminator_hidden_layers = 1;
  p.arch.dropout_rate = 0.20;
  p.train.max_seq_len = 160;
  p.train.batch_size = 32;
  p.train.lr_discriminator = 2e-7;
  p.train.lr_generator = 2e-7;
  p.train.adam_epsilon = 2e-7;
  p.train.epochs = 20;
  p.train.warmup_proportion = 0.10;
  return p;
}

Preset acl_preset() {
  Preset p;
  p.arch.noise_dim = 100;
  p.arch.generator_hidden_layers = 2;
  p.arch.discriminator_hidden_layers = 1;
  p.arch.dropout_rate = 0.10;
  p.train.max_seq_len = 64;
  p.train.batch_size = 16;
  p.train.lr_discriminator = 5e-5;
  p.train.lr_generator = 5e-4;
  p.train.adam_epsilon = 2e-7;
  p.train.epochs = 30;
  p.train.warmup_proportion = 0.10;
  return p;
}

std::optional<Preset> find_preset(std::string_view name) {
  if (name == "scicite") return scicite_preset();
  if (name == "acl" || name == "3c" || name == "acl-arc") return acl_preset();
  return std::nullopt;
}

double schedule_factor(std::size_t step, std::size_t total_steps, std::size_t warmup_steps) {
  if (step <= warmup_steps) return warmup_steps == 0 ? 1.0 : static_cast<double>(step) / static_cast<double>(warmup_steps);
  if (total_steps <= warmup_steps) return 0.0;
  return std::max(0.0, static_cast<double>(total_steps - step) / static_cast<double>(total_steps - warmup_steps));
}

namespace {

std::vector<std::size_t> resolve_rows(const std::vector<std::string>& ids, const ingest::EmbeddingSet& embeddings) {
  std::vector<std::size_t> rows;
  rows.reserve(ids.size());
  for (const auto& id : ids) {
    auto row = embeddings.find(id);
    if (!row) throw ValidationError("split record '" + id + "' has no embedding");
    rows.push_back(*row);
  }
  return rows;
}

double dev_macro_f1(const Discriminator<double>& d, const Matrix<double>& dev_x, const std::vector<std::size_t>& dev_y,
                    std::size_t k) {
  const auto preds = predict(d, dev_x);
  LabelMap pred_map, gold_map;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    pred_map.emplace(std::to_string(i), preds[i].intent);
    gold_map.emplace(std::to_string(i), dev_y[i]);
  }
  return evaluate(pred_map, gold_map, k).macro_f1;
}

void check_finite(double value, const char* what, std::size_t epoch) {
  if (!std::isfinite(value)) {
    throw ConvergenceError(std::string(what) + " became non-finite during epoch " + std::to_string(epoch));
  }
}

}  // namespace

TrainResult train(GanModel model, const ingest::DatasetSplit& split, const ingest::EmbeddingSet& embeddings,
                  const TrainConfig& config, Objective objective) {
  config.validate();
  ingest::validate_split(split);
  const std::size_t k = model.schema.size();
  if (embeddings.dim() != static_cast<std::size_t>(model.discriminator.input_dim())) {
    throw ValidationError("embedding dimension " + std::to_string(embeddings.dim()) + " does not match model input " +
                          std::to_string(model.discriminator.input_dim()));
  }
  const bool adversarial = objective == Objective::semi_supervised;
  if (adversarial && (!model.generator || !model.generator_opt)) {
    throw ValidationError("semi-supervised training needs a generator");
  }

  // Training pool: labeled first, then unlabeled; labels < 0 mean masked.
  const auto labeled_rows = resolve_rows(split.labeled_train, embeddings);
  const auto unlabeled_rows = resolve_rows(split.unlabeled_train, embeddings);
  const auto dev_rows = resolve_rows(split.dev, embeddings);
  resolve_rows(split.test, embeddings);

  std::vector<std::size_t> pool_rows = labeled_rows;
  pool_rows.insert(pool_rows.end(), unlabeled_rows.begin(), unlabeled_rows.end());
  std::vector<std::ptrdiff_t> pool_labels;
  for (const auto& id : split.labeled_train) {
    const auto y = split.gold.at(id);
    if (y >= k) throw ValidationError("record '" + id + "' has gold intent outside the schema");
    pool_labels.push_back(static_cast<std::ptrdiff_t>(y));
  }
  pool_labels.resize(pool_rows.size(), -1);
  const Matrix<double> pool = to_batch(embeddings, pool_rows);
  const Matrix<double> dev_x = to_batch(embeddings, dev_rows);
  std::vector<std::size_t> dev_y;
  for (const auto& id : split.dev) dev_y.push_back(split.gold.at(id));

  TrainResult result{model, {}, std::nullopt};
  if (config.epochs == 0 || pool_rows.empty()) return result;

  const std::size_t batches = (pool_rows.size() + config.batch_size - 1) / config.batch_size;
  const std::size_t total_steps = batches * config.epochs;
  const auto warmup_steps =
      static_cast<std::size_t>(std::floor(config.warmup_proportion * static_cast<double>(total_steps)));
  const AdamConfig adam{0.9, 0.999, config.adam_epsilon};
  const LossWeights weights = adversarial ? LossWeights{1.0, 1.0} : LossWeights{1.0, 0.0};
  const auto noise_dim = model.generator ? model.generator->noise_dim : Eigen::Index{0};

  Rng rng(config.seed);
  std::vector<std::size_t> order(pool_rows.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  double best_f1 = -std::numeric_limits<double>::infinity();
  std::size_t step = 0;

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    rng.shuffle(std::span(order));
    EpochLog entry;
    entry.epoch = epoch;

    for (std::size_t b = 0; b < batches; ++b) {
      const auto begin = b * config.batch_size;
      const auto end = std::min(order.size(), begin + config.batch_size);
      std::vector<Eigen::Index> lab_cols, unl_cols;
      std::vector<std::size_t> labels;
      for (auto i = begin; i < end; ++i) {
        const auto col = static_cast<Eigen::Index>(order[i]);
        if (pool_labels[order[i]] >= 0) {
          lab_cols.push_back(col);
          labels.push_back(static_cast<std::size_t>(pool_labels[order[i]]));
        } else {
          unl_cols.push_back(col);
        }
      }
      const Matrix<double> labeled = pool(Eigen::all, lab_cols);
      const Matrix<double> unlabeled = pool(Eigen::all, unl_cols);

      ++step;
      const double factor = schedule_factor(step, total_steps, warmup_steps);

      if (!adversarial) {
        const Matrix<double> no_fake(pool.rows(), 0);
        auto d_loss = loss_discriminator(model.discriminator, labeled, labels, unlabeled, no_fake, true, &rng, weights);
        check_finite(d_loss.supervised, "L_sup", epoch);
        adam_update(model.discriminator.net, model.discriminator_opt, d_loss.grad, config.lr_discriminator * factor, adam);
        entry.supervised += d_loss.supervised;
        continue;
      }

      auto& gen = *model.generator;
      const auto n_fake = static_cast<Eigen::Index>(end - begin);
      Matrix<double> noise(noise_dim, n_fake);
      for (Eigen::Index j = 0; j < n_fake; ++j) {
        for (Eigen::Index i = 0; i < noise_dim; ++i) noise(i, j) = rng.normal();
      }
      std::vector<std::size_t> classes(static_cast<std::size_t>(n_fake));
      for (auto& c : classes) c = static_cast<std::size_t>(rng.index(k));
      const auto g_trace = generator_forward(gen, noise, classes, true, &rng);
      const Matrix<double>& fake = g_trace.output();

      auto d_loss = loss_discriminator(model.discriminator, labeled, labels, unlabeled, fake, true, &rng, weights);
      check_finite(d_loss.total(), "discriminator loss", epoch);
      adam_update(model.discriminator.net, model.discriminator_opt, d_loss.grad, config.lr_discriminator * factor, adam);

      const Matrix<double> real = pool(Eigen::all, [&] {
        std::vector<Eigen::Index> cols(lab_cols);
        cols.insert(cols.end(), unl_cols.begin(), unl_cols.end());
        return cols;
      }());
      auto g_loss = loss_generator(model.discriminator, fake, real, true, &rng);
      check_finite(g_loss.total(), "generator loss", epoch);
      const auto g_grad = generator_gradient(gen, g_trace, g_loss.d_fake);
      adam_update(gen.net, *model.generator_opt, g_grad, config.lr_generator * factor, adam);

      entry.supervised += d_loss.supervised;
      entry.unsupervised += d_loss.unsupervised;
      entry.generator += g_loss.total();
    }
    entry.supervised /= static_cast<double>(batches);
    entry.unsupervised /= static_cast<double>(batches);
    entry.generator /= static_cast<double>(batches);

    if (dev_rows.empty()) {
      entry.dev_macro_f1 = std::numeric_limits<double>::quiet_NaN();
      result.model = model;
      result.best_epoch = epoch;
    } else {
      entry.dev_macro_f1 = dev_macro_f1(model.discriminator, dev_x, dev_y, k);
      if (entry.dev_macro_f1 > best_f1) {
        best_f1 = entry.dev_macro_f1;
        result.model = model;
        result.best_epoch = epoch;
      }
    }
    result.log.push_back(entry);
  }
  return result;
}

void write_train_log(std::span<const EpochLog> log, std::ostream& out) {
  CsvWriter csv(out);
  csv.row({"epoch", "L_sup", "L_unsup", "L_G", "dev_macro_f1"});
  for (const auto& e : log) {
    csv.field(std::to_string(e.epoch))
        .field(format_real(e.supervised))
        .field(format_real(e.unsupervised))
        .field(format_real(e.generator))
        .field(format_real(e.dev_macro_f1));
    csv.end_row();
  }
}

void write_train_log(std::span<const EpochLog> log, const std::filesystem::path& path) {
  auto out = open_output(path);
  write_train_log(log, out);
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace citenet::ssgan
