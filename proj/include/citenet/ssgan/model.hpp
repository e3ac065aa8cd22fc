#pragma once

#include <cstdint>
#include <optional>

#include "citenet/ingest/label_schema.hpp"
#include "citenet/ssgan/adam.hpp"
#include "citenet/ssgan/networks.hpp"

namespace citenet::ssgan {

/// Trained or in-training classifier. The generator (and its optimizer state)
/// is only needed during training and is usually dropped at export.
struct GanModel {
  ingest::LabelSchema schema;
  Architecture arch;
  Discriminator<double> discriminator;
  AdamState<double> discriminator_opt;
  std::optional<Generator<double>> generator;
  std::optional<AdamState<double>> generator_opt;

  bool operator==(const GanModel&) const = default;
};

/// Fresh model with both networks initialized from `seed`.
GanModel make_model(const ingest::LabelSchema& schema, Architecture arch, std::uint64_t seed);

}  // namespace citenet::ssgan
