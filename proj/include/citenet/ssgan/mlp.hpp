#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "citenet/common/error.hpp"
#include "citenet/common/rng.hpp"

namespace citenet::ssgan {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Affine map x -> W x + b with W of shape (out, in). Also used as the
/// gradient and Adam-moment container for a layer.
template <typename Scalar>
struct DenseLayer {
  Matrix<Scalar> weight;
  Vector<Scalar> bias;

  DenseLayer() = default;
  DenseLayer(Eigen::Index in, Eigen::Index out) : weight(Matrix<Scalar>::Zero(out, in)), bias(Vector<Scalar>::Zero(out)) {}

  Eigen::Index in_dim() const { return weight.cols(); }
  Eigen::Index out_dim() const { return weight.rows(); }

  bool operator==(const DenseLayer& other) const { return weight == other.weight && bias == other.bias; }
};

/// Feed-forward stack: every layer but the last is followed by a leaky
/// rectifier; the last layer is linear. Dropout (inverted scaling) is applied
/// to the input of every layer after the first, and to the network input
/// too when `input_dropout` is set.
template <typename Scalar>
struct Mlp {
  std::vector<DenseLayer<Scalar>> layers;
  Scalar leaky_slope = Scalar(0.2);
  Scalar dropout_rate = Scalar(0);
  bool input_dropout = false;

  Eigen::Index in_dim() const { return layers.front().in_dim(); }
  Eigen::Index out_dim() const { return layers.back().out_dim(); }
  std::size_t hidden_count() const { return layers.size() - 1; }

  bool operator==(const Mlp& other) const {
    return layers == other.layers && leaky_slope == other.leaky_slope && dropout_rate == other.dropout_rate &&
           input_dropout == other.input_dropout;
  }
};

/// Gradient with the same layout as the network it belongs to.
template <typename Scalar>
using MlpGradient = std::vector<DenseLayer<Scalar>>;

template <typename Scalar>
MlpGradient<Scalar> zeros_like(const Mlp<Scalar>& net) {
  MlpGradient<Scalar> g;
  g.reserve(net.layers.size());
  for (const auto& l : net.layers) g.emplace_back(l.in_dim(), l.out_dim());
  return g;
}

/// Intermediate values of a batched forward pass; columns are examples.
template <typename Scalar>
struct MlpTrace {
  std::vector<Matrix<Scalar>> inputs;  // input to layer l, after dropout
  std::vector<Matrix<Scalar>> pre;     // pre-activation of layer l
  std::vector<Matrix<Scalar>> masks;   // dropout scale applied to inputs[l]; empty when none

  const Matrix<Scalar>& output() const { return pre.back(); }
  /// Post-activation output of hidden layer `h` (as seen by layer h + 1).
  const Matrix<Scalar>& hidden(std::size_t h) const { return inputs[h + 1]; }
};

template <typename Scalar>
Matrix<Scalar> leaky_relu(const Matrix<Scalar>& z, Scalar slope) {
  return z.unaryExpr([slope](Scalar v) { return v > Scalar(0) ? v : slope * v; });
}

template <typename Scalar>
Matrix<Scalar> dropout_mask(Eigen::Index rows, Eigen::Index cols, Scalar rate, Rng& rng) {
  const Scalar keep = Scalar(1) - rate;
  Matrix<Scalar> mask(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) mask(i, j) = rng.uniform() < static_cast<double>(keep) ? Scalar(1) / keep : Scalar(0);
  }
  return mask;
}

/// Batched forward pass. Dropout is active only when `train_mode` is set, in
/// which case `rng` supplies the masks.
template <typename Scalar>
MlpTrace<Scalar> forward(const Mlp<Scalar>& net, const Matrix<Scalar>& x, bool train_mode, Rng* rng) {
  if (x.rows() != net.in_dim()) {
    throw ParameterError("network expects input dimension " + std::to_string(net.in_dim()) + ", got " +
                         std::to_string(x.rows()));
  }
  const bool dropout = train_mode && net.dropout_rate > Scalar(0);
  if (dropout && rng == nullptr) throw ParameterError("train-mode dropout needs a random source");

  MlpTrace<Scalar> trace;
  const auto depth = net.layers.size();
  trace.inputs.reserve(depth);
  trace.pre.reserve(depth);
  trace.masks.resize(depth);

  Matrix<Scalar> h = x;
  for (std::size_t l = 0; l < depth; ++l) {
    if (dropout && (l > 0 || net.input_dropout)) {
      trace.masks[l] = dropout_mask<Scalar>(h.rows(), h.cols(), net.dropout_rate, *rng);
      h = h.cwiseProduct(trace.masks[l]);
    }
    const auto& layer = net.layers[l];
    Matrix<Scalar> z = layer.weight * h;
    z.colwise() += layer.bias;
    trace.inputs.push_back(std::move(h));
    if (l + 1 < depth) h = leaky_relu<Scalar>(z, net.leaky_slope);
    trace.pre.push_back(std::move(z));
  }
  return trace;
}

/// Reverse pass. `d_output` is dLoss/d(output); `d_hidden`, when non-empty,
/// holds extra gradients on hidden activations (indexed like
/// MlpTrace::hidden, empty matrices meaning none). Accumulates parameter
/// gradients into `grad` (if non-null) and returns dLoss/d(input).
template <typename Scalar>
Matrix<Scalar> backward(const Mlp<Scalar>& net, const MlpTrace<Scalar>& trace, const Matrix<Scalar>& d_output,
                        const std::vector<Matrix<Scalar>>& d_hidden, MlpGradient<Scalar>* grad) {
  Matrix<Scalar> g = d_output;
  Matrix<Scalar> d_input;
  for (std::size_t l = net.layers.size(); l-- > 0;) {
    if (grad != nullptr) {
      (*grad)[l].weight.noalias() += g * trace.inputs[l].transpose();
      (*grad)[l].bias += g.rowwise().sum();
    }
    Matrix<Scalar> dh = net.layers[l].weight.transpose() * g;
    if (l > 0 && l - 1 < d_hidden.size() && d_hidden[l - 1].size() > 0) dh += d_hidden[l - 1];
    if (trace.masks[l].size() > 0) dh = dh.cwiseProduct(trace.masks[l]);
    if (l == 0) {
      d_input = std::move(dh);
      break;
    }
    const Scalar slope = net.leaky_slope;
    g = dh.cwiseProduct(trace.pre[l - 1].unaryExpr([slope](Scalar v) { return v > Scalar(0) ? Scalar(1) : slope; }));
  }
  return d_input;
}

/// Numerically stable column-wise softmax.
template <typename Scalar>
Matrix<Scalar> softmax_columns(const Matrix<Scalar>& logits) {
  Matrix<Scalar> p(logits.rows(), logits.cols());
  for (Eigen::Index j = 0; j < logits.cols(); ++j) {
    const Scalar m = logits.col(j).maxCoeff();
    p.col(j) = (logits.col(j).array() - m).exp().matrix();
    p.col(j) /= p.col(j).sum();
  }
  return p;
}

template <typename Scalar>
Scalar log_sum_exp(const Eigen::Ref<const Vector<Scalar>>& v) {
  const Scalar m = v.maxCoeff();
  return m + std::log((v.array() - m).exp().sum());
}

}  // namespace citenet::ssgan
