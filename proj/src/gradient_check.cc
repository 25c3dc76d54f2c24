#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "stylo/error.h"
#include "stylo/models.h"
#include "stylo/random.h"

namespace stylo {
namespace {

void CheckEpsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1e-2)) {
    throw ConfigError("epsilon must lie in (0, 1e-2], got " +
                      std::to_string(epsilon));
  }
}

double RelativeError(double analytic, double numeric) {
  const double scale =
      std::max({std::abs(analytic), std::abs(numeric), 1e-12});
  return std::abs(analytic - numeric) / scale;
}

// Central difference of `loss` with respect to *param. The parameter is
// restored from a saved copy, not by subtracting epsilon back.
double CentralDifference(double* param, double epsilon,
                         const std::function<double()>& loss) {
  const double saved = *param;
  *param = saved + epsilon;
  const double up = loss();
  *param = saved - epsilon;
  const double down = loss();
  *param = saved;
  return (up - down) / (2.0 * epsilon);
}

void Record(GradientCheckResult& r, double analytic, double numeric) {
  const double err = RelativeError(analytic, numeric);
  if (err > r.max_relative_error) {
    r.max_relative_error = err;
    r.worst_parameter = r.parameter_count;
  }
  ++r.parameter_count;
}

}  // namespace

GradientCheckResult GradientCheck(LogisticModel& m, std::span<const double> x,
                                  int y, double epsilon) {
  CheckEpsilon(epsilon);
  const double residual = Sigmoid(m.Logit(x)) - y;
  const auto loss = [&] { return BceFromLogit(m.Logit(x), y); };
  GradientCheckResult r;
  for (size_t j = 0; j < m.weights.size(); ++j) {
    Record(r, residual * x[j], CentralDifference(&m.weights[j], epsilon, loss));
  }
  Record(r, residual, CentralDifference(&m.bias, epsilon, loss));
  return r;
}

GradientCheckResult GradientCheck(MlpModel& m, std::span<const double> x,
                                  int y, double epsilon) {
  CheckEpsilon(epsilon);
  m.Validate();
  MlpGradient grad(m);
  Backprop(m, x, y, grad);
  const auto loss = [&] { return BceFromLogit(m.Logit(x), y); };
  GradientCheckResult r;
  for (size_t l = 0; l < m.layers.size(); ++l) {
    auto& w = m.layers[l].weights.data();
    for (size_t k = 0; k < w.size(); ++k) {
      Record(r, grad.weights[l].data()[k], CentralDifference(&w[k], epsilon, loss));
    }
    auto& b = m.layers[l].bias;
    for (size_t k = 0; k < b.size(); ++k) {
      Record(r, grad.bias[l][k], CentralDifference(&b[k], epsilon, loss));
    }
  }
  return r;
}

}  // namespace stylo

namespace stylo {

double GradientCheckThreshold(ModelKind kind) {
  return kind == ModelKind::kLogistic ? 1e-7 : 1e-5;
}

RandomGradientCheckResult RandomGradientCheck(
    const RandomGradientCheckOptions& options) {
  CheckEpsilon(options.epsilon);
  if (options.input_dim == 0 || options.hidden_width == 0) {
    throw ConfigError("gradient check dimensions must be at least 1");
  }
  Rng param_rng(DeriveSeed(options.seed, "gradcheck/params"));
  Rng sample_rng(DeriveSeed(options.seed, "gradcheck/samples"));
  const auto draw_input = [&] {
    std::vector<double> x(options.input_dim);
    for (double& v : x) v = sample_rng.Normal();
    return x;
  };

  RandomGradientCheckResult result;
  if (options.kind == ModelKind::kLogistic) {
    LogisticModel m;
    m.weights.resize(options.input_dim);
    for (double& w : m.weights) w = 0.5 * param_rng.Normal();
    m.bias = 0.5 * param_rng.Normal();
    for (size_t s = 0; s < options.samples; ++s) {
      const auto x = draw_input();
      const int y = sample_rng.Bernoulli(0.5) ? 1 : 0;
      result.max_relative_error = std::max(
          result.max_relative_error,
          GradientCheck(m, x, y, options.epsilon).max_relative_error);
      ++result.samples_checked;
    }
    return result;
  }

  MlpModel m = InitMlp(options.input_dim, HiddenLayerCount(options.kind),
                       options.hidden_width,
                       DeriveSeed(options.seed, "gradcheck/init"));
  // Non-zero biases so their gradients are exercised too.
  for (auto& layer : m.layers) {
    for (double& b : layer.bias) b = param_rng.Uniform(-0.1, 0.1);
  }
  while (result.samples_checked < options.samples) {
    const auto x = draw_input();
    const int y = sample_rng.Bernoulli(0.5) ? 1 : 0;
    if (MinHiddenPreactivation(m, x) < options.kink_margin) {
      ++result.samples_redrawn;
      continue;
    }
    result.max_relative_error =
        std::max(result.max_relative_error,
                 GradientCheck(m, x, y, options.epsilon).max_relative_error);
    ++result.samples_checked;
  }
  return result;
}

}  // namespace stylo
