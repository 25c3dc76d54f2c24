#ifndef STYLO_EXPERIMENTS_H_
#define STYLO_EXPERIMENTS_H_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stylo/corpus.h"
#include "stylo/models.h"

namespace stylo {

// IL trains and tests within one language; CL trains on a pool of languages
// and tests on held-out ones.
enum class Setting { kIL, kCL };

std::string_view SettingName(Setting s);  // "IL" / "CL"
std::optional<Setting> ParseSetting(std::string_view text);

struct ExperimentSpec {
  Setting setting = Setting::kIL;
  std::vector<ModelKind> models{std::begin(kAllModelKinds),
                                std::end(kAllModelKinds)};
  // Fractions only; the seed is replaced per run.
  SplitSpec split;
  std::map<ModelKind, TrainConfig> train_overrides;
  size_t hidden_width = kDefaultHiddenWidth;
  size_t runs = 10;
  uint64_t base_seed = 0;
  // IL languages; empty means every language in the corpus.
  std::vector<std::string> languages;
  std::vector<std::string> cl_holdout{"de", "it"};
  double cl_dev_fraction = 0.1;

  // Override if present, else the model family's defaults. The seed field is
  // ignored; runs derive their own.
  TrainConfig ConfigFor(ModelKind kind) const;
  void Validate() const;
  // Effective settings as ordered key/value pairs, using config-file keys.
  std::vector<std::pair<std::string, std::string>> Echo() const;
};

// Applies one config-file key. Throws ConfigError naming the key when it is
// unknown or its value does not parse.
void ApplyConfigValue(ExperimentSpec& spec, std::string_view key,
                      std::string_view value);
// "key = value" lines; '#' starts a comment.
void ApplyConfigStream(ExperimentSpec& spec, std::istream& in);
ExperimentSpec LoadExperimentConfig(const std::string& path,
                                    ExperimentSpec base = {});

struct CellResult {
  std::string language;
  ModelKind model = ModelKind::kLogistic;
  size_t instance_count = 0;
  double accuracy_mean = 0.0;
  double accuracy_std = 0.0;
  std::vector<double> per_run_accuracies;
};

struct ResultTable {
  Setting setting = Setting::kIL;
  // Sorted by (language, model).
  std::vector<CellResult> cells;
  ExperimentSpec spec_echo;
};

// Fraction of equal positions. Throws DataError when lengths differ or are 0.
double Accuracy(std::span<const int> predictions, std::span<const int> truth);

struct RunAggregate {
  double mean = 0.0;
  double std = 0.0;  // sample std (n - 1); 0 for a single value
};
RunAggregate AggregateRuns(std::span<const double> values);

// What one run fed to the standardizer and where its authors went.
struct RunObservation {
  std::string scope;  // IL: the language; CL: "pool"
  size_t run = 0;
  std::vector<std::string> standardizer_fit_ids;
  std::vector<std::string> train_ids;
  std::vector<std::string> dev_ids;
  std::vector<std::string> test_ids;
};

struct RunOptions {
  size_t jobs = 1;
  // Called from worker threads.
  std::function<void(const RunObservation&)> observer;
};

// Per run r: split seeded by base_seed + r, standardizer fitted on that
// run's training rows only, every model trained and scored on the test part.
ResultTable RunIL(const Corpus& corpus, const ExperimentSpec& spec,
                  const RunOptions& options = {});
// Per run r: the non-holdout pool is split into train/dev; each holdout
// language's full author set is the test set.
ResultTable RunCL(const Corpus& corpus, const ExperimentSpec& spec,
                  const RunOptions& options = {});
ResultTable RunExperiment(const Corpus& corpus, const ExperimentSpec& spec,
                          const RunOptions& options = {});

enum class ReportFormat { kText, kDelimited };

// Text: '#' spec lines, then "Lang Ins <models>" rows with accuracy x100 to
// two decimals and the std in parentheses when runs > 1. Delimited: '#' spec
// lines, a header, one tab-separated line per cell at full precision.
std::string EmitReport(const ResultTable& table, ReportFormat format);
ResultTable ParseDelimitedReport(std::istream& in);

}  // namespace stylo

#endif  // STYLO_EXPERIMENTS_H_
