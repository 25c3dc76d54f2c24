#include "stylo/experiments.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

#include "stylo/error.h"
#include "stylo/features.h"
#include "stylo/random.h"
#include "stylo/standardize.h"

namespace stylo {

double Accuracy(std::span<const int> predictions, std::span<const int> truth) {
  if (predictions.size() != truth.size()) {
    throw DataError("accuracy: " + std::to_string(predictions.size()) +
                    " predictions for " + std::to_string(truth.size()) +
                    " labels");
  }
  if (truth.empty()) throw DataError("accuracy: empty label list");
  size_t correct = 0;
  for (size_t i = 0; i < truth.size(); ++i) {
    if (predictions[i] == truth[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(truth.size());
}

RunAggregate AggregateRuns(std::span<const double> values) {
  if (values.empty()) throw DataError("aggregate_runs: empty list");
  RunAggregate agg;
  for (double v : values) agg.mean += v;
  agg.mean /= static_cast<double>(values.size());
  if (values.size() >= 2) {
    double ss = 0.0;
    for (double v : values) ss += (v - agg.mean) * (v - agg.mean);
    agg.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return agg;
}

namespace {

// Runs tasks [0, count) on up to `jobs` threads. Every task runs even if
// another fails; the lowest-index failure is rethrown so the reported error
// does not depend on scheduling.
void ParallelFor(size_t count, size_t jobs,
                 const std::function<void(size_t)>& task) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<size_t> next{0};
  const auto worker = [&] {
    for (size_t i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const size_t threads = std::max<size_t>(1, std::min(jobs, count));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// Re-raises the current exception with a (scope, model, run) tag, keeping
// data errors distinguishable from training failures.
[[noreturn]] void RethrowTagged(const std::string& tag) {
  try {
    throw;
  } catch (const DataError& e) {
    throw DataError(tag + " " + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(tag + " " + e.what());
  } catch (const std::exception& e) {
    throw TrainingError(tag + " " + e.what());
  }
}

std::vector<FeatureVector> ExtractAll(const Corpus& corpus, size_t jobs) {
  std::vector<FeatureVector> features(corpus.size());
  ParallelFor(corpus.size(), jobs, [&](size_t i) {
    features[i] = ExtractAuthorFeatures(corpus[i]);
  });
  return features;
}

struct Partition {
  std::vector<size_t> train;
  std::vector<size_t> dev;
  std::vector<size_t> test;
};

std::vector<size_t> Positions(const Corpus& corpus,
                              const std::vector<std::string>& ids) {
  std::vector<size_t> out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.push_back(corpus.PositionOf(id));
  return out;
}

std::vector<std::string> Ids(const Corpus& corpus,
                             const std::vector<size_t>& positions) {
  std::vector<std::string> out;
  out.reserve(positions.size());
  for (size_t p : positions) out.push_back(corpus[p].id);
  return out;
}

Dataset BuildDataset(const Corpus& corpus,
                     const std::vector<FeatureVector>& raw,
                     const std::vector<size_t>& positions,
                     const Standardizer& standardizer) {
  std::vector<FeatureVector> rows;
  std::vector<int> labels;
  rows.reserve(positions.size());
  for (size_t p : positions) {
    rows.push_back(standardizer.Transform(raw[p]));
    labels.push_back(GenderLabel(corpus[p].gender));
  }
  return Dataset::FromRows(rows, labels);
}

// Trains one model and returns its predicted labels for each test set.
std::vector<std::vector<int>> TrainAndPredict(
    ModelKind kind, const ExperimentSpec& spec, uint64_t seed,
    const Dataset& train, const Dataset& dev,
    const std::vector<const Dataset*>& tests) {
  TrainConfig cfg = spec.ConfigFor(kind);
  cfg.seed = DeriveSeed(seed, "train");
  std::vector<std::vector<int>> predictions;
  if (kind == ModelKind::kLogistic) {
    const LogisticModel model = TrainLogistic(train, cfg).model;
    for (const Dataset* test : tests) {
      auto& out = predictions.emplace_back();
      for (size_t i = 0; i < test->size(); ++i) {
        out.push_back(PredictLabel(PredictLogistic(model, test->x.row(i))));
      }
    }
    return predictions;
  }
  MlpModel init = InitMlp(train.x.cols(), HiddenLayerCount(kind),
                          spec.hidden_width, DeriveSeed(seed, "init"));
  const MlpModel model =
      TrainMlp(train, dev.size() > 0 ? &dev : nullptr, std::move(init), cfg)
          .model;
  for (const Dataset* test : tests) {
    auto& out = predictions.emplace_back();
    for (size_t i = 0; i < test->size(); ++i) {
      out.push_back(PredictLabel(Forward(model, test->x.row(i))));
    }
  }
  return predictions;
}

std::string RunTag(std::string_view scope, std::string_view model, size_t run) {
  return "[" + std::string(scope) + ", " + std::string(model) + ", run " +
         std::to_string(run) + "]";
}

void RequireBothGenders(const Corpus& corpus, const std::string& lang) {
  bool seen[2] = {false, false};
  for (size_t p : corpus.by_language().at(lang)) {
    seen[GenderLabel(corpus[p].gender)] = true;
  }
  if (!seen[0] || !seen[1]) {
    throw DataError("language '" + lang + "' does not contain both genders");
  }
}

ResultTable Assemble(const ExperimentSpec& spec,
                     const std::vector<std::string>& languages,
                     const std::vector<size_t>& instance_counts,
                     // [language][model][run]
                     const std::vector<std::vector<std::vector<double>>>& acc) {
  ResultTable table;
  table.setting = spec.setting;
  table.spec_echo = spec;
  std::vector<ModelKind> models = spec.models;
  std::sort(models.begin(), models.end());
  for (size_t li = 0; li < languages.size(); ++li) {
    for (ModelKind kind : models) {
      const size_t mi = static_cast<size_t>(
          std::find(spec.models.begin(), spec.models.end(), kind) -
          spec.models.begin());
      CellResult cell;
      cell.language = languages[li];
      cell.model = kind;
      cell.instance_count = instance_counts[li];
      cell.per_run_accuracies = acc[li][mi];
      const auto agg = AggregateRuns(cell.per_run_accuracies);
      cell.accuracy_mean = agg.mean;
      cell.accuracy_std = agg.std;
      table.cells.push_back(std::move(cell));
    }
  }
  return table;
}

}  // namespace

ResultTable RunIL(const Corpus& corpus, const ExperimentSpec& spec,
                  const RunOptions& options) {
  spec.Validate();
  std::vector<std::string> languages =
      spec.languages.empty() ? corpus.languages() : spec.languages;
  std::sort(languages.begin(), languages.end());
  languages.erase(std::unique(languages.begin(), languages.end()),
                  languages.end());
  for (const auto& lang : languages) {
    if (!corpus.HasLanguage(lang)) {
      throw DataError("language '" + lang + "' is not present in the corpus");
    }
    RequireBothGenders(corpus, lang);
  }

  const auto raw = ExtractAll(corpus, options.jobs);
  const size_t runs = spec.runs;
  const size_t models = spec.models.size();
  std::vector<std::vector<std::vector<double>>> acc(
      languages.size(),
      std::vector<std::vector<double>>(models, std::vector<double>(runs)));

  ParallelFor(languages.size() * runs, options.jobs, [&](size_t task) {
    const size_t li = task / runs;
    const size_t r = task % runs;
    const std::string& lang = languages[li];
    const uint64_t run_seed = spec.base_seed + r;

    Partition part;
    try {
      SplitSpec split = spec.split;
      split.seed = run_seed;
      const DataSplit ids = StratifiedSplit(corpus, {lang}, split);
      part = {Positions(corpus, ids.train), Positions(corpus, ids.dev),
              Positions(corpus, ids.test)};
    } catch (...) {
      RethrowTagged(RunTag(lang, "split", r));
    }

    std::vector<FeatureVector> fit_rows;
    for (size_t p : part.train) fit_rows.push_back(raw[p]);
    Standardizer standardizer;
    try {
      standardizer = Standardizer::Fit(fit_rows);
    } catch (...) {
      RethrowTagged(RunTag(lang, "standardize", r));
    }
    if (options.observer) {
      options.observer({lang, r, Ids(corpus, part.train), Ids(corpus, part.train),
                        Ids(corpus, part.dev), Ids(corpus, part.test)});
    }
    const Dataset train = BuildDataset(corpus, raw, part.train, standardizer);
    const Dataset dev = BuildDataset(corpus, raw, part.dev, standardizer);
    const Dataset test = BuildDataset(corpus, raw, part.test, standardizer);

    for (size_t mi = 0; mi < models; ++mi) {
      const ModelKind kind = spec.models[mi];
      try {
        const uint64_t seed = DeriveSeed(
            run_seed, "model/" + lang + "/" + std::string(ModelKindName(kind)));
        const auto preds = TrainAndPredict(kind, spec, seed, train, dev, {&test});
        acc[li][mi][r] = Accuracy(preds[0], test.y);
      } catch (...) {
        RethrowTagged(RunTag(lang, ModelKindName(kind), r));
      }
    }
  });

  std::vector<size_t> counts;
  for (const auto& lang : languages) {
    counts.push_back(corpus.by_language().at(lang).size());
  }
  return Assemble(spec, languages, counts, acc);
}

ResultTable RunCL(const Corpus& corpus, const ExperimentSpec& spec,
                  const RunOptions& options) {
  spec.Validate();
  std::vector<std::string> holdouts = spec.cl_holdout;
  std::sort(holdouts.begin(), holdouts.end());
  for (const auto& lang : holdouts) {
    if (!corpus.HasLanguage(lang)) {
      throw DataError("holdout language '" + lang +
                      "' is not present in the corpus");
    }
  }
  std::vector<std::string> pool;
  for (const auto& lang : corpus.languages()) {
    if (!std::binary_search(holdouts.begin(), holdouts.end(), lang)) {
      pool.push_back(lang);
    }
  }
  if (pool.empty()) {
    throw DataError("cross-lingual setting needs at least one training "
                    "language besides the holdouts");
  }

  const auto raw = ExtractAll(corpus, options.jobs);
  const size_t runs = spec.runs;
  const size_t models = spec.models.size();
  std::vector<std::vector<std::vector<double>>> acc(
      holdouts.size(),
      std::vector<std::vector<double>>(models, std::vector<double>(runs)));

  std::vector<size_t> all_holdout;
  for (const auto& lang : holdouts) {
    const auto& pos = corpus.by_language().at(lang);
    all_holdout.insert(all_holdout.end(), pos.begin(), pos.end());
  }

  // Parallel over (run, model); the split and standardizer are recomputed
  // per task, which is cheap and keeps tasks independent.
  ParallelFor(runs * models, options.jobs, [&](size_t task) {
    const size_t r = task / models;
    const size_t mi = task % models;
    const ModelKind kind = spec.models[mi];
    const uint64_t run_seed = spec.base_seed + r;

    Partition part;
    try {
      SplitSpec split{1.0 - spec.cl_dev_fraction, spec.cl_dev_fraction, 0.0,
                      run_seed};
      const DataSplit ids = StratifiedSplit(corpus, pool, split);
      part = {Positions(corpus, ids.train), Positions(corpus, ids.dev), {}};
    } catch (...) {
      RethrowTagged(RunTag("pool", "split", r));
    }
    std::vector<FeatureVector> fit_rows;
    for (size_t p : part.train) fit_rows.push_back(raw[p]);
    Standardizer standardizer;
    try {
      standardizer = Standardizer::Fit(fit_rows);
    } catch (...) {
      RethrowTagged(RunTag("pool", "standardize", r));
    }
    if (options.observer && mi == 0) {
      options.observer({"pool", r, Ids(corpus, part.train),
                        Ids(corpus, part.train), Ids(corpus, part.dev),
                        Ids(corpus, all_holdout)});
    }
    const Dataset train = BuildDataset(corpus, raw, part.train, standardizer);
    const Dataset dev = BuildDataset(corpus, raw, part.dev, standardizer);
    std::vector<Dataset> tests;
    for (const auto& lang : holdouts) {
      tests.push_back(BuildDataset(corpus, raw, corpus.by_language().at(lang),
                                   standardizer));
    }
    std::vector<const Dataset*> test_ptrs;
    for (const auto& t : tests) test_ptrs.push_back(&t);

    try {
      const uint64_t seed =
          DeriveSeed(run_seed, "model/pool/" + std::string(ModelKindName(kind)));
      const auto preds = TrainAndPredict(kind, spec, seed, train, dev, test_ptrs);
      for (size_t h = 0; h < holdouts.size(); ++h) {
        acc[h][mi][r] = Accuracy(preds[h], tests[h].y);
      }
    } catch (...) {
      RethrowTagged(RunTag("pool", ModelKindName(kind), r));
    }
  });

  std::vector<size_t> counts;
  for (const auto& lang : holdouts) {
    counts.push_back(corpus.by_language().at(lang).size());
  }
  return Assemble(spec, holdouts, counts, acc);
}

ResultTable RunExperiment(const Corpus& corpus, const ExperimentSpec& spec,
                          const RunOptions& options) {
  return spec.setting == Setting::kIL ? RunIL(corpus, spec, options)
                                      : RunCL(corpus, spec, options);
}

}  // namespace stylo
