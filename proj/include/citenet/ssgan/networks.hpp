#pragma once

#include <cmath>
#include <cstddef>
#include <span>

#include "citenet/ssgan/mlp.hpp"

namespace citenet::ssgan {

/// Layer counts and widths shared by generator and discriminator.
struct Architecture {
  std::size_t num_classes = 0;    // k
  std::size_t embedding_dim = 0;  // H
  std::size_t noise_dim = 100;
  std::size_t generator_hidden_layers = 1;
  std::size_t discriminator_hidden_layers = 1;
  std::size_t hidden_width = 0;  // 0 selects embedding_dim
  double dropout_rate = 0.1;
  double leaky_slope = 0.2;

  std::size_t width() const { return hidden_width == 0 ? embedding_dim : hidden_width; }
  void validate() const;

  bool operator==(const Architecture&) const = default;
};

/// Conditional generator: [noise ; one-hot(class)] -> fake embedding.
template <typename Scalar>
struct Generator {
  Mlp<Scalar> net;
  Eigen::Index noise_dim = 0;
  Eigen::Index num_classes = 0;

  Eigen::Index output_dim() const { return net.out_dim(); }
  bool operator==(const Generator&) const = default;
};

/// (k+1)-way classifier over embeddings; index k is the synthetic class.
/// Feature matching reads the activations of hidden layer `feature_layer`.
template <typename Scalar>
struct Discriminator {
  Mlp<Scalar> net;
  std::size_t feature_layer = 0;

  Eigen::Index input_dim() const { return net.in_dim(); }
  Eigen::Index num_classes() const { return net.out_dim() - 1; }
  bool operator==(const Discriminator&) const = default;
};

namespace detail {

template <typename Scalar>
DenseLayer<Scalar> init_layer(Eigen::Index in, Eigen::Index out, Rng& rng) {
  DenseLayer<Scalar> layer(in, out);
  const double bound = 1.0 / std::sqrt(static_cast<double>(in));
  for (Eigen::Index j = 0; j < in; ++j) {
    for (Eigen::Index i = 0; i < out; ++i) layer.weight(i, j) = static_cast<Scalar>(rng.uniform(-bound, bound));
  }
  for (Eigen::Index i = 0; i < out; ++i) layer.bias(i) = static_cast<Scalar>(rng.uniform(-bound, bound));
  return layer;
}

template <typename Scalar>
Mlp<Scalar> init_mlp(Eigen::Index in, Eigen::Index width, std::size_t hidden, Eigen::Index out, const Architecture& arch,
                     bool input_dropout, Rng& rng) {
  Mlp<Scalar> net;
  net.leaky_slope = static_cast<Scalar>(arch.leaky_slope);
  net.dropout_rate = static_cast<Scalar>(arch.dropout_rate);
  net.input_dropout = input_dropout;
  Eigen::Index prev = in;
  for (std::size_t h = 0; h < hidden; ++h) {
    net.layers.push_back(init_layer<Scalar>(prev, width, rng));
    prev = width;
  }
  net.layers.push_back(init_layer<Scalar>(prev, out, rng));
  return net;
}

}  // namespace detail

/// Weights and biases drawn uniformly from +-1/sqrt(fan_in).
template <typename Scalar>
Generator<Scalar> make_generator(const Architecture& arch, Rng& rng) {
  arch.validate();
  const auto k = static_cast<Eigen::Index>(arch.num_classes);
  const auto z = static_cast<Eigen::Index>(arch.noise_dim);
  Generator<Scalar> g;
  g.noise_dim = z;
  g.num_classes = k;
  g.net = detail::init_mlp<Scalar>(z + k, static_cast<Eigen::Index>(arch.width()), arch.generator_hidden_layers,
                                   static_cast<Eigen::Index>(arch.embedding_dim), arch, false, rng);
  return g;
}

template <typename Scalar>
Discriminator<Scalar> make_discriminator(const Architecture& arch, Rng& rng) {
  arch.validate();
  Discriminator<Scalar> d;
  d.net = detail::init_mlp<Scalar>(static_cast<Eigen::Index>(arch.embedding_dim), static_cast<Eigen::Index>(arch.width()),
                                   arch.discriminator_hidden_layers,
                                   static_cast<Eigen::Index>(arch.num_classes + 1), arch, true, rng);
  d.feature_layer = arch.discriminator_hidden_layers - 1;
  return d;
}

template <typename Scalar>
void validate(const Mlp<Scalar>& net, const char* name) {
  if (net.layers.empty()) throw ParameterError(std::string(name) + " has no layers");
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    const auto& layer = net.layers[l];
    if (layer.bias.size() != layer.out_dim()) throw ParameterError(std::string(name) + ": bias size mismatch");
    if (l > 0 && layer.in_dim() != net.layers[l - 1].out_dim()) {
      throw ParameterError(std::string(name) + ": layer " + std::to_string(l) + " does not chain");
    }
  }
  if (!(net.dropout_rate >= Scalar(0) && net.dropout_rate < Scalar(1))) {
    throw ParameterError(std::string(name) + ": dropout rate must lie in [0, 1)");
  }
}

template <typename Scalar>
void validate(const Generator<Scalar>& g) {
  validate(g.net, "generator");
  if (g.net.in_dim() != g.noise_dim + g.num_classes) throw ParameterError("generator input width != noise_dim + k");
}

template <typename Scalar>
void validate(const Discriminator<Scalar>& d) {
  validate(d.net, "discriminator");
  if (d.net.hidden_count() == 0) throw ParameterError("discriminator needs at least one hidden layer");
  if (d.feature_layer >= d.net.hidden_count()) throw ParameterError("discriminator feature layer out of range");
  if (d.num_classes() < 2) throw ParameterError("discriminator needs at least 2 real classes");
}

/// Stacks noise columns over one-hot class columns.
template <typename Scalar>
Matrix<Scalar> generator_input(const Generator<Scalar>& g, const Matrix<Scalar>& noise,
                               std::span<const std::size_t> classes) {
  if (noise.rows() != g.noise_dim) throw ParameterError("noise dimension mismatch");
  if (static_cast<std::size_t>(noise.cols()) != classes.size()) throw ParameterError("one class per noise column required");
  Matrix<Scalar> in = Matrix<Scalar>::Zero(g.noise_dim + g.num_classes, noise.cols());
  in.topRows(g.noise_dim) = noise;
  for (std::size_t j = 0; j < classes.size(); ++j) {
    if (classes[j] >= static_cast<std::size_t>(g.num_classes)) {
      throw ParameterError("class index " + std::to_string(classes[j]) + " outside 0.." +
                           std::to_string(g.num_classes - 1));
    }
    in(g.noise_dim + static_cast<Eigen::Index>(classes[j]), static_cast<Eigen::Index>(j)) = Scalar(1);
  }
  return in;
}

/// Batched generator pass; the fake embeddings are `trace.output()`.
template <typename Scalar>
MlpTrace<Scalar> generator_forward(const Generator<Scalar>& g, const Matrix<Scalar>& noise,
                                   std::span<const std::size_t> classes, bool train_mode, Rng* rng) {
  return forward(g.net, generator_input(g, noise, classes), train_mode, rng);
}

/// Single-example generator pass.
template <typename Scalar>
Vector<Scalar> generator_forward(const Generator<Scalar>& g, const Vector<Scalar>& noise, std::size_t class_index,
                                 bool train_mode, Rng* rng) {
  if (!noise.allFinite()) throw ParameterError("noise vector is not finite");
  const std::size_t cls[1] = {class_index};
  Matrix<Scalar> z = noise;
  return generator_forward(g, z, std::span<const std::size_t>(cls), train_mode, rng).output().col(0);
}

template <typename Scalar>
struct DiscriminatorOutput {
  MlpTrace<Scalar> trace;
  Matrix<Scalar> probs;  // (k+1) x batch

  const Matrix<Scalar>& logits() const { return trace.output(); }
  const Matrix<Scalar>& features(const Discriminator<Scalar>& d) const { return trace.hidden(d.feature_layer); }
};

template <typename Scalar>
DiscriminatorOutput<Scalar> discriminator_forward(const Discriminator<Scalar>& d, const Matrix<Scalar>& x,
                                                  bool train_mode, Rng* rng) {
  if (x.rows() != d.input_dim()) {
    throw ParameterError("discriminator expects dimension " + std::to_string(d.input_dim()) + ", got " +
                         std::to_string(x.rows()));
  }
  DiscriminatorOutput<Scalar> out{forward(d.net, x, train_mode, rng), {}};
  out.probs = softmax_columns<Scalar>(out.trace.output());
  return out;
}

}  // namespace citenet::ssgan
