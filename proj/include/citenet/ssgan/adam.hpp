#pragma once

#include <cmath>
#include <cstdint>

#include "citenet/ssgan/mlp.hpp"

namespace citenet::ssgan {

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// First/second moment estimates with the network's layout.
template <typename Scalar>
struct AdamState {
  MlpGradient<Scalar> m;
  MlpGradient<Scalar> v;
  std::uint64_t step = 0;

  bool operator==(const AdamState&) const = default;
};

template <typename Scalar>
AdamState<Scalar> make_adam_state(const Mlp<Scalar>& net) {
  return {zeros_like(net), zeros_like(net), 0};
}

/// One bias-corrected Adam update with learning rate `lr`.
template <typename Scalar>
void adam_update(Mlp<Scalar>& net, AdamState<Scalar>& state, const MlpGradient<Scalar>& grad, double lr,
                 const AdamConfig& config) {
  ++state.step;
  const Scalar b1 = static_cast<Scalar>(config.beta1);
  const Scalar b2 = static_cast<Scalar>(config.beta2);
  const Scalar eps = static_cast<Scalar>(config.epsilon);
  const double t = static_cast<double>(state.step);
  const Scalar c1 = static_cast<Scalar>(1.0 - std::pow(config.beta1, t));
  const Scalar c2 = static_cast<Scalar>(1.0 - std::pow(config.beta2, t));
  const Scalar rate = static_cast<Scalar>(lr);

  auto apply = [&](auto& param, auto& m, auto& v, const auto& g) {
    m = b1 * m + (Scalar(1) - b1) * g;
    v = b2 * v + (Scalar(1) - b2) * g.cwiseProduct(g);
    param.array() -= rate * (m.array() / c1) / ((v.array() / c2).sqrt() + eps);
  };
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    apply(net.layers[l].weight, state.m[l].weight, state.v[l].weight, grad[l].weight);
    apply(net.layers[l].bias, state.m[l].bias, state.v[l].bias, grad[l].bias);
  }
}

}  // namespace citenet::ssgan
