#include <cmath>
#include <numeric>
#include <string>

#include "stylo/error.h"
#include "stylo/models.h"
#include "stylo/random.h"
#include "training_checks.h"

namespace stylo {

double LogisticModel::Logit(std::span<const double> x) const {
  if (x.size() != weights.size()) {
    throw DataError("logistic model expects " +
                    std::to_string(weights.size()) + " features, got " +
                    std::to_string(x.size()));
  }
  double z = bias;
  for (size_t j = 0; j < x.size(); ++j) z += weights[j] * x[j];
  return z;
}

double PredictLogistic(const LogisticModel& m, std::span<const double> x) {
  return Sigmoid(m.Logit(x));
}

double PredictLogistic(const LogisticModel& m, const FeatureVector& x) {
  return PredictLogistic(m, std::span<const double>(x.values));
}

double LogisticObjective(const LogisticModel& m, const Dataset& data,
                         double l2) {
  double loss = 0.0;
  for (size_t i = 0; i < data.size(); ++i) {
    loss += BceFromLogit(m.Logit(data.x.row(i)), data.y[i]);
  }
  loss /= static_cast<double>(data.size());
  double sq = 0.0;
  for (double w : m.weights) sq += w * w;
  return loss + 0.5 * l2 * sq;
}

LogisticFit TrainLogistic(const Dataset& train, const TrainConfig& cfg) {
  cfg.Validate();
  internal::CheckTrainingData(train);
  const size_t n = train.size();
  const size_t dim = train.x.cols();
  const size_t batch =
      cfg.batch_size == 0 || cfg.batch_size >= n ? n : cfg.batch_size;

  LogisticFit fit;
  fit.model.weights.assign(dim, 0.0);
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(DeriveSeed(cfg.seed, "logistic/shuffle"));
  std::vector<double> grad_w(dim);

  for (size_t epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    if (batch < n) rng.Shuffle(std::span(order));
    for (size_t start = 0; start < n; start += batch) {
      const size_t end = std::min(n, start + batch);
      std::fill(grad_w.begin(), grad_w.end(), 0.0);
      double grad_b = 0.0;
      for (size_t k = start; k < end; ++k) {
        const auto x = train.x.row(order[k]);
        const double r = Sigmoid(fit.model.Logit(x)) - train.y[order[k]];
        for (size_t j = 0; j < dim; ++j) grad_w[j] += r * x[j];
        grad_b += r;
      }
      const double scale = 1.0 / static_cast<double>(end - start);
      for (size_t j = 0; j < dim; ++j) {
        fit.model.weights[j] -= cfg.learning_rate *
                                (grad_w[j] * scale + cfg.l2 * fit.model.weights[j]);
      }
      fit.model.bias -= cfg.learning_rate * grad_b * scale;
    }
    const double loss = LogisticObjective(fit.model, train, cfg.l2);
    if (!std::isfinite(loss)) {
      throw TrainingError("logistic regression diverged at epoch " +
                          std::to_string(epoch));
    }
    fit.report.train_loss_curve.push_back(loss);
    fit.report.epochs_run = epoch;
  }
  return fit;
}

}  // namespace stylo
