#pragma once

#include <span>
#include <vector>

#include "citenet/ssgan/networks.hpp"

namespace citenet::ssgan {

/// Scales the two discriminator terms before differentiation. {1, 0} gives
/// the supervised-only baseline.
struct LossWeights {
  double supervised = 1.0;
  double unsupervised = 1.0;
};

template <typename Scalar>
struct DiscriminatorLoss {
  Scalar supervised = 0;    // L_sup
  Scalar unsupervised = 0;  // L_unsup
  MlpGradient<Scalar> grad;

  Scalar total() const { return supervised + unsupervised; }
};

template <typename Scalar>
struct GeneratorLoss {
  Scalar fool = 0;
  Scalar feature_matching = 0;
  Matrix<Scalar> d_fake;  // dL_G / d(fake embeddings)

  Scalar total() const { return fool + feature_matching; }
};

namespace detail {

template <typename Scalar>
Matrix<Scalar> hstack(std::initializer_list<const Matrix<Scalar>*> parts, Eigen::Index rows) {
  Eigen::Index cols = 0;
  for (const auto* p : parts) cols += p->cols();
  Matrix<Scalar> out(rows, cols);
  Eigen::Index at = 0;
  for (const auto* p : parts) {
    if (p->cols() == 0) continue;
    if (p->rows() != rows) throw ParameterError("batch dimension mismatch");
    out.middleCols(at, p->cols()) = *p;
    at += p->cols();
  }
  return out;
}

// Softmax restricted to the first k logits of one column.
template <typename Scalar>
Vector<Scalar> real_class_probs(const Eigen::Ref<const Vector<Scalar>>& logits, Eigen::Index k) {
  const Scalar m = logits.head(k).maxCoeff();
  Vector<Scalar> q = (logits.head(k).array() - m).exp().matrix();
  return q / q.sum();
}

}  // namespace detail

/// Discriminator objective:
///   L_sup   = mean_labeled -log( p(y|x) / sum_{c<k} p(c|x) )
///   L_unsup = mean_real -log(1 - p_fake(x)) + mean_fake -log p_fake(x)
/// Empty sets contribute zero. `grad` differentiates
/// w.supervised * L_sup + w.unsupervised * L_unsup with respect to D's parameters.
template <typename Scalar>
DiscriminatorLoss<Scalar> loss_discriminator(const Discriminator<Scalar>& d, const Matrix<Scalar>& labeled,
                                             std::span<const std::size_t> labels, const Matrix<Scalar>& unlabeled,
                                             const Matrix<Scalar>& fake, bool train_mode, Rng* rng,
                                             LossWeights weights = {}) {
  if (static_cast<std::size_t>(labeled.cols()) != labels.size()) throw ParameterError("one label per labeled column");
  const Eigen::Index k = d.num_classes();
  for (auto y : labels) {
    if (y >= static_cast<std::size_t>(k)) throw ParameterError("label " + std::to_string(y) + " is not a real class");
  }
  const Eigen::Index n_lab = labeled.cols(), n_unl = unlabeled.cols(), n_fake = fake.cols();
  const Eigen::Index n_real = n_lab + n_unl;
  const Matrix<Scalar> x = detail::hstack<Scalar>({&labeled, &unlabeled, &fake}, d.input_dim());

  DiscriminatorLoss<Scalar> loss;
  loss.grad = zeros_like(d.net);
  if (x.cols() == 0) return loss;

  auto out = discriminator_forward(d, x, train_mode, rng);
  const auto& z = out.logits();
  Matrix<Scalar> dz = Matrix<Scalar>::Zero(z.rows(), z.cols());
  const Scalar ws = static_cast<Scalar>(weights.supervised);
  const Scalar wu = static_cast<Scalar>(weights.unsupervised);

  Scalar sup = 0, unsup_real = 0, unsup_fake = 0;
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const Scalar lse_all = log_sum_exp<Scalar>(z.col(j));
    if (j < n_real) {
      const Vector<Scalar> q = detail::real_class_probs<Scalar>(z.col(j), k);
      const Scalar lse_real = log_sum_exp<Scalar>(z.col(j).head(k));
      if (j < n_lab) {
        const auto y = static_cast<Eigen::Index>(labels[static_cast<std::size_t>(j)]);
        sup += lse_real - z(y, j);
        Vector<Scalar> g = Vector<Scalar>::Zero(k + 1);
        g.head(k) = q;
        g(y) -= Scalar(1);
        dz.col(j) += g * (ws / static_cast<Scalar>(n_lab));
      }
      unsup_real += lse_all - lse_real;
      Vector<Scalar> g = out.probs.col(j);
      g.head(k) -= q;
      dz.col(j) += g * (wu / static_cast<Scalar>(n_real));
    } else {
      unsup_fake += lse_all - z(k, j);
      Vector<Scalar> g = out.probs.col(j);
      g(k) -= Scalar(1);
      dz.col(j) += g * (wu / static_cast<Scalar>(n_fake));
    }
  }
  if (n_lab > 0) loss.supervised = sup / static_cast<Scalar>(n_lab);
  if (n_real > 0) loss.unsupervised += unsup_real / static_cast<Scalar>(n_real);
  if (n_fake > 0) loss.unsupervised += unsup_fake / static_cast<Scalar>(n_fake);

  backward(d.net, out.trace, dz, {}, &loss.grad);
  return loss;
}

/// Generator objective with D held fixed:
///   L_G = -mean_fake log(1 - p_fake(x)) + || mean_real f(x) - mean_fake f(x) ||^2
/// where f is D's feature layer. Returns the gradient with respect to the
/// fake embeddings only; real features are treated as constants.
template <typename Scalar>
GeneratorLoss<Scalar> loss_generator(const Discriminator<Scalar>& d, const Matrix<Scalar>& fake,
                                     const Matrix<Scalar>& real, bool train_mode, Rng* rng) {
  if (fake.cols() == 0 || real.cols() == 0) throw ParameterError("generator loss needs non-empty real and fake batches");
  const Eigen::Index k = d.num_classes();
  const Eigen::Index n_real = real.cols(), n_fake = fake.cols();
  const Matrix<Scalar> x = detail::hstack<Scalar>({&real, &fake}, d.input_dim());

  auto out = discriminator_forward(d, x, train_mode, rng);
  const auto& z = out.logits();
  const auto& f = out.features(d);

  GeneratorLoss<Scalar> loss;
  Matrix<Scalar> dz = Matrix<Scalar>::Zero(z.rows(), z.cols());
  for (Eigen::Index j = n_real; j < x.cols(); ++j) {
    const Vector<Scalar> q = detail::real_class_probs<Scalar>(z.col(j), k);
    loss.fool += log_sum_exp<Scalar>(z.col(j)) - log_sum_exp<Scalar>(z.col(j).head(k));
    Vector<Scalar> g = out.probs.col(j);
    g.head(k) -= q;
    dz.col(j) = g / static_cast<Scalar>(n_fake);
  }
  loss.fool /= static_cast<Scalar>(n_fake);

  const Vector<Scalar> gap = f.leftCols(n_real).rowwise().mean() - f.rightCols(n_fake).rowwise().mean();
  loss.feature_matching = gap.squaredNorm();

  std::vector<Matrix<Scalar>> d_hidden(d.net.hidden_count());
  auto& df = d_hidden[d.feature_layer];
  df = Matrix<Scalar>::Zero(f.rows(), f.cols());
  df.rightCols(n_fake).colwise() = gap * (Scalar(-2) / static_cast<Scalar>(n_fake));

  const Matrix<Scalar> dx = backward<Scalar>(d.net, out.trace, dz, d_hidden, nullptr);
  loss.d_fake = dx.rightCols(n_fake);
  return loss;
}

/// Chains dL/d(fake) through the generator pass recorded in `trace`.
template <typename Scalar>
MlpGradient<Scalar> generator_gradient(const Generator<Scalar>& g, const MlpTrace<Scalar>& trace,
                                       const Matrix<Scalar>& d_fake) {
  auto grad = zeros_like(g.net);
  backward<Scalar>(g.net, trace, d_fake, {}, &grad);
  return grad;
}

}  // namespace citenet::ssgan
