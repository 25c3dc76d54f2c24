#ifndef STYLO_MODELS_H_
#define STYLO_MODELS_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "stylo/features.h"
#include "stylo/matrix.h"

namespace stylo {

enum class ModelKind { kLogistic, kFfnn1, kFfnn2, kFfnn3 };

inline constexpr ModelKind kAllModelKinds[] = {
    ModelKind::kLogistic, ModelKind::kFfnn1, ModelKind::kFfnn2,
    ModelKind::kFfnn3};

// "LR", "FFNN1", "FFNN2", "FFNN3".
std::string_view ModelKindName(ModelKind kind);
// Case-insensitive; also accepts "logistic".
std::optional<ModelKind> ParseModelKind(std::string_view name);
// 0 for logistic regression.
int HiddenLayerCount(ModelKind kind);

inline constexpr size_t kDefaultHiddenWidth = 32;

struct TrainConfig {
  double learning_rate = 0.1;
  size_t max_epochs = 500;
  size_t batch_size = 0;  // 0 = full batch
  double l2 = 1e-4;
  uint64_t seed = 0;
  size_t patience = 0;  // epochs without dev improvement; 0 disables

  static TrainConfig LogisticDefaults();
  static TrainConfig MlpDefaults();
  void Validate() const;
  bool operator==(const TrainConfig&) const = default;
};

struct TrainReport {
  size_t epochs_run = 0;
  // Regularized training loss after each epoch.
  std::vector<double> train_loss_curve;
  std::optional<double> best_dev_accuracy;
};

// Rows of features with binary labels (Female=1, Male=0).
struct Dataset {
  Matrix x;
  std::vector<int> y;

  size_t size() const { return y.size(); }
  static Dataset FromRows(std::span<const FeatureVector> rows,
                          std::span<const int> labels);
};

double Sigmoid(double z);
// Binary cross-entropy of label y against sigmoid(z), computed from the
// logit without forming log(0).
double BceFromLogit(double z, int y);
// 1 iff p >= 0.5.
int PredictLabel(double p);

// ---------------------------------------------------------------------------
// Logistic regression

struct LogisticModel {
  std::vector<double> weights;
  double bias = 0.0;

  size_t input_dim() const { return weights.size(); }
  double Logit(std::span<const double> x) const;
  bool operator==(const LogisticModel&) const = default;
};

double PredictLogistic(const LogisticModel& m, std::span<const double> x);
double PredictLogistic(const LogisticModel& m, const FeatureVector& x);

// Gradient descent from zero initialization on mean BCE + (l2/2)*|w|^2.
// The bias is not regularized.
struct LogisticFit {
  LogisticModel model;
  TrainReport report;
};
LogisticFit TrainLogistic(const Dataset& train, const TrainConfig& cfg);

// Mean BCE + (l2/2)*|w|^2 over the dataset.
double LogisticObjective(const LogisticModel& m, const Dataset& data, double l2);

// ---------------------------------------------------------------------------
// Feed-forward network: affine+ReLU per hidden layer, affine+sigmoid output.

struct DenseLayer {
  Matrix weights;  // out x in
  std::vector<double> bias;

  size_t in() const { return weights.cols(); }
  size_t out() const { return weights.rows(); }
  bool operator==(const DenseLayer&) const = default;
};

struct MlpModel {
  std::vector<DenseLayer> layers;

  size_t hidden_count() const { return layers.empty() ? 0 : layers.size() - 1; }
  size_t input_dim() const { return layers.empty() ? 0 : layers.front().in(); }
  double Logit(std::span<const double> x) const;
  // Checks that dimensions chain and the output is a single unit.
  void Validate() const;
  bool operator==(const MlpModel&) const = default;
};

// Weights uniform in +-sqrt(6/fan_in), biases zero.
MlpModel InitMlp(size_t input_dim, int hidden_count, size_t hidden_width,
                 uint64_t seed);

double Forward(const MlpModel& m, std::span<const double> x);
double Forward(const MlpModel& m, const FeatureVector& x);

// Mini-batch gradient descent with a per-epoch seeded shuffle. With a dev
// set, the parameters from the epoch with the best dev accuracy are returned
// and training stops after `patience` epochs without improvement.
struct MlpFit {
  MlpModel model;
  TrainReport report;
};
MlpFit TrainMlp(const Dataset& train, const Dataset* dev, MlpModel init,
                const TrainConfig& cfg);

double MlpObjective(const MlpModel& m, const Dataset& data, double l2);

// Parameter-shaped gradient buffers.
struct MlpGradient {
  std::vector<Matrix> weights;
  std::vector<std::vector<double>> bias;

  explicit MlpGradient(const MlpModel& m);
  void Zero();
};

// Adds d(BCE)/d(theta) at (x, y) into grad and returns the BCE.
double Backprop(const MlpModel& m, std::span<const double> x, int y,
                MlpGradient& grad);

// Smallest |pre-activation| over all hidden units at x.
double MinHiddenPreactivation(const MlpModel& m, std::span<const double> x);

// ---------------------------------------------------------------------------
// Finite-difference gradient checking on the unregularized BCE at (x, y).
// Relative error per parameter is |a - n| / max(|a|, |n|, 1e-12). The model
// is perturbed in place and every parameter is restored to its exact
// original value. Throws ConfigError unless epsilon is in (0, 1e-2].

struct GradientCheckResult {
  double max_relative_error = 0.0;
  size_t parameter_count = 0;
  size_t worst_parameter = 0;
};

GradientCheckResult GradientCheck(LogisticModel& m, std::span<const double> x,
                                  int y, double epsilon);
GradientCheckResult GradientCheck(MlpModel& m, std::span<const double> x,
                                  int y, double epsilon);

// Draws one seeded random model of `kind` and checks it on `samples` seeded
// random (input, label) pairs. For networks, inputs with a hidden
// pre-activation within `kink_margin` of zero are redrawn.
struct RandomGradientCheckOptions {
  ModelKind kind = ModelKind::kLogistic;
  size_t input_dim = 21;
  size_t hidden_width = 8;
  uint64_t seed = 0;
  double epsilon = 1e-5;
  size_t samples = 20;
  double kink_margin = 1e-6;
};

struct RandomGradientCheckResult {
  double max_relative_error = 0.0;
  size_t samples_checked = 0;
  size_t samples_redrawn = 0;
};

RandomGradientCheckResult RandomGradientCheck(
    const RandomGradientCheckOptions& options);

// Pass threshold on the max relative error: 1e-7 logistic, 1e-5 networks.
double GradientCheckThreshold(ModelKind kind);

// ---------------------------------------------------------------------------
// Serialization: "stylo-model 1", kind, dims, then parameters row-major with
// 17 significant digits.

using Model = std::variant<LogisticModel, MlpModel>;

void WriteModel(const Model& model, std::ostream& out);
Model ReadModel(std::istream& in);

}  // namespace stylo

#endif  // STYLO_MODELS_H_
