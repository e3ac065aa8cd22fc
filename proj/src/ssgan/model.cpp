#include "citenet/ssgan/model.hpp"

namespace citenet::ssgan {

void Architecture::validate() const {
  if (num_classes < 2) throw ParameterError("architecture needs at least 2 classes");
  if (embedding_dim == 0) throw ParameterError("embedding dimension must be positive");
  if (noise_dim == 0) throw ParameterError("noise dimension must be positive");
  if (discriminator_hidden_layers == 0) throw ParameterError("discriminator needs at least one hidden layer");
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) throw ParameterError("dropout rate must lie in [0, 1)");
  if (!(leaky_slope >= 0.0 && leaky_slope < 1.0)) throw ParameterError("leaky slope must lie in [0, 1)");
}

GanModel make_model(const ingest::LabelSchema& schema, Architecture arch, std::uint64_t seed) {
  arch.num_classes = schema.size();
  arch.validate();
  Rng rng(seed);
  auto d = make_discriminator<double>(arch, rng);
  auto g = make_generator<double>(arch, rng);
  auto d_opt = make_adam_state(d.net);
  auto g_opt = make_adam_state(g.net);
  return GanModel{schema, arch, std::move(d), std::move(d_opt), std::move(g), std::move(g_opt)};
}

}  // namespace citenet::ssgan
