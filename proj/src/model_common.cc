#include <cctype>
#include <cmath>
#include <limits>
#include <string>

#include "stylo/error.h"
#include "stylo/models.h"

namespace stylo {

std::string_view ModelKindName(ModelKind kind) {
  switch (kind) {
    case ModelKind::kLogistic:
      return "LR";
    case ModelKind::kFfnn1:
      return "FFNN1";
    case ModelKind::kFfnn2:
      return "FFNN2";
    case ModelKind::kFfnn3:
      return "FFNN3";
  }
  return "?";
}

std::optional<ModelKind> ParseModelKind(std::string_view name) {
  std::string lower;
  for (char c : name) {
    lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (lower == "lr" || lower == "logistic") return ModelKind::kLogistic;
  if (lower == "ffnn1") return ModelKind::kFfnn1;
  if (lower == "ffnn2") return ModelKind::kFfnn2;
  if (lower == "ffnn3") return ModelKind::kFfnn3;
  return std::nullopt;
}

int HiddenLayerCount(ModelKind kind) {
  switch (kind) {
    case ModelKind::kLogistic:
      return 0;
    case ModelKind::kFfnn1:
      return 1;
    case ModelKind::kFfnn2:
      return 2;
    case ModelKind::kFfnn3:
      return 3;
  }
  return 0;
}

TrainConfig TrainConfig::LogisticDefaults() {
  TrainConfig c;
  c.learning_rate = 0.1;
  c.max_epochs = 500;
  c.batch_size = 0;
  c.l2 = 1e-4;
  c.patience = 0;
  return c;
}

TrainConfig TrainConfig::MlpDefaults() {
  TrainConfig c;
  c.learning_rate = 0.05;
  c.max_epochs = 300;
  c.batch_size = 32;
  c.l2 = 1e-4;
  c.patience = 20;
  return c;
}

void TrainConfig::Validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw ConfigError("learning_rate must be a positive finite number");
  }
  if (!(l2 >= 0.0) || !std::isfinite(l2)) {
    throw ConfigError("l2 must be a non-negative finite number");
  }
  if (max_epochs == 0) throw ConfigError("max_epochs must be at least 1");
}

Dataset Dataset::FromRows(std::span<const FeatureVector> rows,
                          std::span<const int> labels) {
  if (rows.size() != labels.size()) {
    throw DataError("dataset: " + std::to_string(rows.size()) + " rows but " +
                    std::to_string(labels.size()) + " labels");
  }
  Dataset d;
  const size_t dim = rows.empty() ? 0 : rows.front().size();
  d.x = Matrix(rows.size(), dim);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != dim) throw DataError("dataset: ragged rows");
    std::copy(rows[i].values.begin(), rows[i].values.end(), d.x.row(i).begin());
  }
  d.y.assign(labels.begin(), labels.end());
  return d;
}

double Sigmoid(double z) {
  double p;
  if (z >= 0.0) {
    p = 1.0 / (1.0 + std::exp(-z));
  } else {
    const double e = std::exp(z);
    p = e / (1.0 + e);
  }
  // Keep probabilities strictly inside (0, 1).
  constexpr double kHi = 1.0 - 0x1p-53;
  constexpr double kLo = std::numeric_limits<double>::denorm_min();
  return p > kHi ? kHi : (p < kLo ? kLo : p);
}

double BceFromLogit(double z, int y) {
  return std::max(z, 0.0) - z * y + std::log1p(std::exp(-std::abs(z)));
}

int PredictLabel(double p) { return p >= 0.5 ? 1 : 0; }

}  // namespace stylo
