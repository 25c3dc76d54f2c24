#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "stylo/error.h"
#include "stylo/models.h"
#include "stylo/random.h"
#include "training_checks.h"

namespace stylo {

void MlpModel::Validate() const {
  if (layers.size() < 2 || layers.size() > 4) {
    throw ConfigError("MLP must have 1 to 3 hidden layers");
  }
  for (size_t l = 0; l < layers.size(); ++l) {
    const DenseLayer& layer = layers[l];
    if (layer.in() == 0 || layer.out() == 0 || layer.bias.size() != layer.out()) {
      throw ConfigError("MLP layer " + std::to_string(l) + " is malformed");
    }
    if (l > 0 && layers[l - 1].out() != layer.in()) {
      throw ConfigError("MLP layer " + std::to_string(l) +
                        " does not chain with its predecessor");
    }
  }
  if (layers.back().out() != 1) throw ConfigError("MLP output must be 1 unit");
}

MlpModel InitMlp(size_t input_dim, int hidden_count, size_t hidden_width,
                 uint64_t seed) {
  if (input_dim == 0 || hidden_width == 0) {
    throw ConfigError("MLP dimensions must be at least 1");
  }
  if (hidden_count < 1 || hidden_count > 3) {
    throw ConfigError("hidden_count must be 1, 2 or 3");
  }
  Rng rng(DeriveSeed(seed, "mlp/init"));
  MlpModel m;
  size_t fan_in = input_dim;
  for (int l = 0; l <= hidden_count; ++l) {
    const size_t fan_out = l == hidden_count ? 1 : hidden_width;
    DenseLayer layer{Matrix(fan_out, fan_in), std::vector<double>(fan_out, 0.0)};
    const double bound = std::sqrt(6.0 / static_cast<double>(fan_in));
    for (double& w : layer.weights.data()) w = rng.Uniform(-bound, bound);
    m.layers.push_back(std::move(layer));
    fan_in = fan_out;
  }
  return m;
}

namespace {

void CheckInput(const MlpModel& m, std::span<const double> x) {
  if (m.layers.empty()) throw ConfigError("MLP has no layers");
  if (x.size() != m.input_dim()) {
    throw DataError("MLP expects " + std::to_string(m.input_dim()) +
                    " features, got " + std::to_string(x.size()));
  }
}

// Pre-activation z = W a + b.
void Affine(const DenseLayer& layer, std::span<const double> in,
            std::vector<double>& out) {
  out.resize(layer.out());
  for (size_t o = 0; o < layer.out(); ++o) {
    const auto w = layer.weights.row(o);
    double z = layer.bias[o];
    for (size_t i = 0; i < in.size(); ++i) z += w[i] * in[i];
    out[o] = z;
  }
}

}  // namespace

double MlpModel::Logit(std::span<const double> x) const {
  CheckInput(*this, x);
  std::vector<double> a(x.begin(), x.end());
  std::vector<double> z;
  for (size_t l = 0; l < layers.size(); ++l) {
    Affine(layers[l], a, z);
    if (l + 1 < layers.size()) {
      for (double& v : z) v = std::max(v, 0.0);
    }
    std::swap(a, z);
  }
  return a[0];
}

double Forward(const MlpModel& m, std::span<const double> x) {
  return Sigmoid(m.Logit(x));
}

double Forward(const MlpModel& m, const FeatureVector& x) {
  return Forward(m, std::span<const double>(x.values));
}

MlpGradient::MlpGradient(const MlpModel& m) {
  for (const auto& layer : m.layers) {
    weights.emplace_back(layer.out(), layer.in());
    bias.emplace_back(layer.out(), 0.0);
  }
}

void MlpGradient::Zero() {
  for (auto& w : weights) std::fill(w.data().begin(), w.data().end(), 0.0);
  for (auto& b : bias) std::fill(b.begin(), b.end(), 0.0);
}

double Backprop(const MlpModel& m, std::span<const double> x, int y,
                MlpGradient& grad) {
  CheckInput(m, x);
  const size_t depth = m.layers.size();
  // activations[l] is the input to layer l; pre[l] its pre-activation.
  std::vector<std::vector<double>> activations(depth + 1);
  std::vector<std::vector<double>> pre(depth);
  activations[0].assign(x.begin(), x.end());
  for (size_t l = 0; l < depth; ++l) {
    Affine(m.layers[l], activations[l], pre[l]);
    activations[l + 1] = pre[l];
    if (l + 1 < depth) {
      for (double& v : activations[l + 1]) v = std::max(v, 0.0);
    }
  }
  const double logit = pre[depth - 1][0];

  std::vector<double> delta{Sigmoid(logit) - y};
  std::vector<double> next;
  for (size_t l = depth; l-- > 0;) {
    const DenseLayer& layer = m.layers[l];
    const auto& in = activations[l];
    for (size_t o = 0; o < layer.out(); ++o) {
      auto gw = grad.weights[l].row(o);
      for (size_t i = 0; i < layer.in(); ++i) gw[i] += delta[o] * in[i];
      grad.bias[l][o] += delta[o];
    }
    if (l == 0) break;
    next.assign(layer.in(), 0.0);
    for (size_t o = 0; o < layer.out(); ++o) {
      const auto w = layer.weights.row(o);
      for (size_t i = 0; i < layer.in(); ++i) next[i] += w[i] * delta[o];
    }
    // ReLU derivative, taken as 0 at the kink.
    for (size_t i = 0; i < next.size(); ++i) {
      if (pre[l - 1][i] <= 0.0) next[i] = 0.0;
    }
    std::swap(delta, next);
  }
  return BceFromLogit(logit, y);
}

double MinHiddenPreactivation(const MlpModel& m, std::span<const double> x) {
  CheckInput(m, x);
  double min_abs = INFINITY;
  std::vector<double> a(x.begin(), x.end());
  std::vector<double> z;
  for (size_t l = 0; l + 1 < m.layers.size(); ++l) {
    Affine(m.layers[l], a, z);
    for (double& v : z) {
      min_abs = std::min(min_abs, std::abs(v));
      v = std::max(v, 0.0);
    }
    std::swap(a, z);
  }
  return min_abs;
}

double MlpObjective(const MlpModel& m, const Dataset& data, double l2) {
  double loss = 0.0;
  for (size_t i = 0; i < data.size(); ++i) {
    loss += BceFromLogit(m.Logit(data.x.row(i)), data.y[i]);
  }
  loss /= static_cast<double>(data.size());
  double sq = 0.0;
  for (const auto& layer : m.layers) {
    for (double w : layer.weights.data()) sq += w * w;
  }
  return loss + 0.5 * l2 * sq;
}

namespace {

double Accuracy(const MlpModel& m, const Dataset& data) {
  size_t correct = 0;
  for (size_t i = 0; i < data.size(); ++i) {
    if (PredictLabel(Forward(m, data.x.row(i))) == data.y[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

}  // namespace

MlpFit TrainMlp(const Dataset& train, const Dataset* dev, MlpModel init,
                const TrainConfig& cfg) {
  cfg.Validate();
  init.Validate();
  internal::CheckTrainingData(train);
  if (train.x.cols() != init.input_dim()) {
    throw DataError("training data has " + std::to_string(train.x.cols()) +
                    " features but the model expects " +
                    std::to_string(init.input_dim()));
  }
  if (dev != nullptr && dev->size() == 0) dev = nullptr;
  if (dev != nullptr && dev->x.cols() != init.input_dim()) {
    throw DataError("dev data dimension does not match the model");
  }

  const size_t n = train.size();
  const size_t batch =
      cfg.batch_size == 0 || cfg.batch_size >= n ? n : cfg.batch_size;

  MlpFit fit{std::move(init), {}};
  MlpModel& model = fit.model;
  MlpModel best = model;
  double best_acc = -1.0;
  size_t since_best = 0;

  MlpGradient grad(model);
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(DeriveSeed(cfg.seed, "mlp/shuffle"));

  for (size_t epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    rng.Shuffle(std::span(order));
    for (size_t start = 0; start < n; start += batch) {
      const size_t end = std::min(n, start + batch);
      grad.Zero();
      for (size_t k = start; k < end; ++k) {
        Backprop(model, train.x.row(order[k]), train.y[order[k]], grad);
      }
      const double scale = 1.0 / static_cast<double>(end - start);
      for (size_t l = 0; l < model.layers.size(); ++l) {
        auto& w = model.layers[l].weights.data();
        const auto& gw = grad.weights[l].data();
        for (size_t k = 0; k < w.size(); ++k) {
          w[k] -= cfg.learning_rate * (gw[k] * scale + cfg.l2 * w[k]);
        }
        auto& b = model.layers[l].bias;
        for (size_t k = 0; k < b.size(); ++k) {
          b[k] -= cfg.learning_rate * grad.bias[l][k] * scale;
        }
      }
    }
    const double loss = MlpObjective(model, train, cfg.l2);
    if (!std::isfinite(loss)) {
      throw TrainingError("MLP training diverged at epoch " +
                          std::to_string(epoch));
    }
    fit.report.train_loss_curve.push_back(loss);
    fit.report.epochs_run = epoch;

    if (dev != nullptr) {
      const double acc = Accuracy(model, *dev);
      if (acc > best_acc) {
        best_acc = acc;
        best = model;
        since_best = 0;
      } else if (cfg.patience > 0 && ++since_best >= cfg.patience) {
        break;
      }
    }
  }
  if (dev != nullptr) {
    fit.model = std::move(best);
    fit.report.best_dev_accuracy = best_acc;
  }
  return fit;
}

}  // namespace stylo
