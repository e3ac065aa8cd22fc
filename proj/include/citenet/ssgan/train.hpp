#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "citenet/ingest/embeddings.hpp"
#include "citenet/ingest/split.hpp"
#include "citenet/ssgan/model.hpp"

namespace citenet::ssgan {

struct TrainConfig {
  std::size_t max_seq_len = 64;  // carried for the encoder export; unused here
  std::size_t batch_size = 16;
  double lr_discriminator = 5e-5;
  double lr_generator = 5e-4;
  double adam_epsilon = 2e-7;
  std::size_t epochs = 30;
  double warmup_proportion = 0.1;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Architecture and optimizer settings published for a dataset family.
struct Preset {
  Architecture arch;  // num_classes and embedding_dim left for the caller
  TrainConfig train;
};

/// SciCite: batch 32, lr 2e-7 for both nets, 20 epochs, z = 768, dropout 0.2,
/// one hidden layer in each network, max length 160.
Preset scicite_preset();
/// ACL-ARC / 3C: batch 16, lr_D 5e-5, lr_G 5e-4, 30 epochs, z = 100,
/// dropout 0.1, two generator hidden layers, max length 64.
Preset acl_preset();
std::optional<Preset> find_preset(std::string_view name);

enum class Objective {
  semi_supervised,  // L_sup + L_unsup for D, plus a generator step
  supervised_only,  // L_sup alone, no generator
};

struct EpochLog {
  std::size_t epoch = 0;  // 1-based
  double supervised = 0.0;
  double unsupervised = 0.0;
  double generator = 0.0;
  double dev_macro_f1 = 0.0;  // NaN when the split has no dev records

  bool operator==(const EpochLog&) const = default;
};

struct TrainResult {
  GanModel model;  // best-dev checkpoint (last epoch when there is no dev set)
  std::vector<EpochLog> log;
  std::optional<std::size_t> best_epoch;
};

/// Multiplier on the base learning rate for 1-based optimizer step `step`:
/// linear ramp to 1 over the warm-up steps, then linear decay to 0.
double schedule_factor(std::size_t step, std::size_t total_steps, std::size_t warmup_steps);

/// Alternating adversarial training: per batch, one discriminator Adam step
/// then (semi-supervised only) one generator Adam step. Deterministic for a
/// fixed config seed. Throws ValidationError naming any split ID without an
/// embedding, ConvergenceError when a loss turns non-finite.
TrainResult train(GanModel model, const ingest::DatasetSplit& split, const ingest::EmbeddingSet& embeddings,
                  const TrainConfig& config, Objective objective = Objective::semi_supervised);

/// CSV `epoch,L_sup,L_unsup,L_G,dev_macro_f1`.
void write_train_log(std::span<const EpochLog> log, std::ostream& out);
void write_train_log(std::span<const EpochLog> log, const std::filesystem::path& path);

}  // namespace citenet::ssgan
