#include "stylo/cli.h"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <regex>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "stylo/corpus.h"
#include "stylo/error.h"
#include "stylo/experiments.h"
#include "stylo/features.h"
#include "stylo/models.h"
#include "stylo/numeric_text.h"
#include "stylo/random.h"
#include "stylo/standardize.h"

namespace stylo::cli {
namespace {

std::ofstream OpenOutput(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write '" + path + "'");
  return out;
}

void WriteFile(const std::string& path, const std::string& content) {
  auto out = OpenOutput(path);
  out << content;
  if (!out.flush()) throw DataError("write failed for '" + path + "'");
}

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> out;
  for (auto item : SplitOn(text, ',')) {
    if (!item.empty()) out.emplace_back(item);
  }
  return out;
}

size_t ResolveJobs(size_t jobs) {
  if (jobs > 0) return jobs;
  return std::max(1u, std::thread::hardware_concurrency());
}

// ---------------------------------------------------------------------------

struct ConvertArgs {
  std::vector<std::string> inputs;
  std::string output;
  std::string lang;
};

// "TwiSty-DE.json" -> "de".
std::string LanguageFromFilename(const std::string& path) {
  static const std::regex pattern(R"(twisty[-_]([a-z]{2,3})\b)",
                                  std::regex::icase);
  std::smatch m;
  const std::string name = std::filesystem::path(path).filename().string();
  if (!std::regex_search(name, m, pattern)) return {};
  std::string lang = m[1].str();
  for (char& c : lang) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return lang;
}

int Convert(const ConvertArgs& args, std::ostream& err) {
  std::vector<Author> authors;
  std::set<std::string> ids;
  size_t skipped_count = 0;
  for (const auto& input : args.inputs) {
    std::ifstream in(input, std::ios::binary);
    if (!in) throw DataError("cannot read '" + input + "'");
    const std::string lang =
        args.lang.empty() ? LanguageFromFilename(input) : args.lang;
    std::vector<std::string> skipped;
    for (auto& a : ParseTwisty(in, lang, &skipped)) {
      if (!ids.insert(a.id).second) {
        skipped.push_back("user '" + a.id + "': duplicate id");
        continue;
      }
      authors.push_back(std::move(a));
    }
    for (const auto& s : skipped) err << "convert: skipping " << s << '\n';
    skipped_count += skipped.size();
  }
  const Corpus corpus(std::move(authors));
  auto out = OpenOutput(args.output);
  WriteCorpus(corpus, out);
  if (!out.flush()) throw DataError("write failed for '" + args.output + "'");
  err << "convert: wrote " << corpus.size() << " authors, skipped "
      << skipped_count << '\n';
  return kSuccess;
}

// ---------------------------------------------------------------------------

struct ExtractArgs {
  std::string corpus;
  std::string output;
};

int Extract(const ExtractArgs& args, std::ostream& out, std::ostream& err) {
  const Corpus corpus = LoadCorpus(args.corpus);
  const FeatureMatrix matrix = ExtractCorpusFeatures(corpus);
  std::ostringstream text;
  WriteFeatureMatrix(matrix, text);
  if (args.output.empty()) {
    out << text.str();
  } else {
    WriteFile(args.output, text.str());
  }
  err << "extract: " << matrix.rows.size() << " authors, "
      << matrix.schema.size() << " features\n";
  return kSuccess;
}

// ---------------------------------------------------------------------------

struct ValidateArgs {
  std::string corpus;
  bool strict = false;
};

int Validate(const ValidateArgs& args, std::ostream& out) {
  const Corpus corpus = LoadCorpus(args.corpus);
  bool all_balanced = true;
  out << "lang\tfemale\tmale\tbalanced\tmin_tweets\tmax_tweets\tmean_tweets\n";
  for (const auto& b : ValidateBalance(corpus)) {
    out << b.language << '\t' << b.female << '\t' << b.male << '\t'
        << (b.balanced ? "yes" : "no") << '\t' << b.min_tweets << '\t'
        << b.max_tweets << '\t' << FormatDouble(b.mean_tweets) << '\n';
    all_balanced = all_balanced && b.balanced;
  }
  return args.strict && !all_balanced ? kDataError : kSuccess;
}

// ---------------------------------------------------------------------------

struct SynthArgs {
  std::string languages = "aa,bb";
  size_t authors = 100;
  size_t tweets = 200;
  double signal = 1.0;
  bool vocabulary_signal = false;
  uint64_t seed = 0;
  std::string output;
};

int Synth(const SynthArgs& args, std::ostream& out, std::ostream& err) {
  SynthConfig cfg;
  cfg.languages = SplitList(args.languages);
  cfg.authors_per_language = args.authors;
  cfg.tweets_per_author = args.tweets;
  cfg.signal_strength = args.signal;
  cfg.vocabulary_signal = args.vocabulary_signal;
  cfg.seed = args.seed;
  const Corpus corpus = SynthCorpus(cfg);
  if (args.output.empty()) {
    WriteCorpus(corpus, out);
  } else {
    SaveCorpus(corpus, args.output);
  }
  err << "synth: wrote " << corpus.size() << " authors\n";
  return kSuccess;
}

// ---------------------------------------------------------------------------

struct RunArgs {
  std::string setting;
  std::string corpus;
  std::string config;
  std::string report;
  std::vector<std::string> sets;
  std::optional<size_t> runs;
  std::optional<uint64_t> base_seed;
  std::string models;
  std::string holdout;
  size_t jobs = 1;
};

ExperimentSpec BuildSpec(const RunArgs& args) {
  ExperimentSpec spec;
  if (!args.config.empty()) spec = LoadExperimentConfig(args.config);
  for (const auto& kv : args.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("--set expects key=value, got '" + kv + "'");
    }
    ApplyConfigValue(spec, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (args.runs) spec.runs = *args.runs;
  if (args.base_seed) spec.base_seed = *args.base_seed;
  if (!args.models.empty()) ApplyConfigValue(spec, "models", args.models);
  if (!args.holdout.empty()) ApplyConfigValue(spec, "cl.holdout", args.holdout);
  if (!args.setting.empty()) ApplyConfigValue(spec, "setting", args.setting);
  spec.Validate();
  return spec;
}

int RunExperimentCommand(const RunArgs& args, std::ostream& out,
                         std::ostream& err) {
  const ExperimentSpec spec = BuildSpec(args);
  const Corpus corpus = LoadCorpus(args.corpus);
  RunOptions options;
  options.jobs = ResolveJobs(args.jobs);
  err << "run: " << SettingName(spec.setting) << " on " << corpus.size()
      << " authors, " << spec.runs << " run(s), " << options.jobs
      << " job(s)\n";
  const ResultTable table = RunExperiment(corpus, spec, options);
  const std::string text = EmitReport(table, ReportFormat::kText);
  const std::string delimited = EmitReport(table, ReportFormat::kDelimited);
  if (args.report.empty()) {
    out << delimited;
    err << text;
  } else {
    WriteFile(args.report + ".tsv", delimited);
    WriteFile(args.report + ".txt", text);
    err << text;
  }
  return kSuccess;
}

// ---------------------------------------------------------------------------

struct GradcheckArgs {
  std::string model = "ffnn3";
  size_t input_dim = 21;
  size_t width = 8;
  uint64_t seed = 0;
  double epsilon = 1e-5;
  size_t samples = 20;
};

int Gradcheck(const GradcheckArgs& args, std::ostream& out) {
  const auto kind = ParseModelKind(args.model);
  if (!kind) throw ConfigError("unknown model kind '" + args.model + "'");
  RandomGradientCheckOptions opts;
  opts.kind = *kind;
  opts.input_dim = args.input_dim;
  opts.hidden_width = args.width;
  opts.seed = args.seed;
  opts.epsilon = args.epsilon;
  opts.samples = args.samples;
  const auto result = RandomGradientCheck(opts);
  const double threshold = GradientCheckThreshold(*kind);
  const bool pass = result.max_relative_error <= threshold;
  out << "model=" << ModelKindName(*kind)
      << " samples=" << result.samples_checked
      << " redrawn=" << result.samples_redrawn
      << " max_relative_error=" << FormatDouble(result.max_relative_error)
      << " threshold=" << FormatDouble(threshold)
      << (pass ? " PASS" : " FAIL") << '\n';
  return pass ? kSuccess : kRuntimeError;
}

// ---------------------------------------------------------------------------

struct TrainArgs {
  std::string corpus;
  std::string model = "lr";
  std::string output;
  std::string standardizer_output;
  std::string languages;
  std::vector<std::string> sets;
  size_t width = kDefaultHiddenWidth;
  double dev_fraction = 0.1;
  uint64_t seed = 0;
};

int Train(const TrainArgs& args, std::ostream& err) {
  const auto kind = ParseModelKind(args.model);
  if (!kind) throw ConfigError("unknown model kind '" + args.model + "'");
  ExperimentSpec spec;
  for (const auto& kv : args.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || !kv.starts_with("train.")) {
      throw ConfigError("--set expects train.<model>.<field>=value, got '" +
                        kv + "'");
    }
    ApplyConfigValue(spec, kv.substr(0, eq), kv.substr(eq + 1));
  }
  TrainConfig cfg = spec.ConfigFor(*kind);
  cfg.seed = DeriveSeed(args.seed, "train");

  const Corpus corpus = LoadCorpus(args.corpus);
  std::vector<std::string> langs =
      args.languages.empty() ? corpus.languages() : SplitList(args.languages);
  const bool use_dev = *kind != ModelKind::kLogistic && args.dev_fraction > 0.0;
  const SplitSpec split{use_dev ? 1.0 - args.dev_fraction : 1.0,
                        use_dev ? args.dev_fraction : 0.0, 0.0, args.seed};
  const DataSplit ids = StratifiedSplit(corpus, langs, split);

  const auto rows_for = [&](const std::vector<std::string>& part,
                            std::vector<int>& labels) {
    std::vector<FeatureVector> rows;
    for (const auto& id : part) {
      const Author& a = corpus[corpus.PositionOf(id)];
      rows.push_back(ExtractAuthorFeatures(a));
      labels.push_back(GenderLabel(a.gender));
    }
    return rows;
  };
  std::vector<int> train_y, dev_y;
  const auto train_raw = rows_for(ids.train, train_y);
  const auto dev_raw = rows_for(ids.dev, dev_y);
  const Standardizer standardizer = Standardizer::Fit(train_raw);
  const Dataset train =
      Dataset::FromRows(standardizer.Transform(train_raw), train_y);
  const Dataset dev = Dataset::FromRows(standardizer.Transform(dev_raw), dev_y);

  Model model;
  TrainReport report;
  if (*kind == ModelKind::kLogistic) {
    auto fit = TrainLogistic(train, cfg);
    model = fit.model;
    report = fit.report;
  } else {
    auto fit = TrainMlp(train, dev.size() ? &dev : nullptr,
                        InitMlp(train.x.cols(), HiddenLayerCount(*kind),
                                args.width, DeriveSeed(args.seed, "init")),
                        cfg);
    model = fit.model;
    report = fit.report;
  }
  {
    auto out = OpenOutput(args.output);
    WriteModel(model, out);
  }
  {
    auto out = OpenOutput(args.standardizer_output);
    standardizer.Write(out);
  }
  err << "train: " << ModelKindName(*kind) << " on " << train.size()
      << " authors, " << report.epochs_run << " epochs, final loss "
      << FormatDouble(report.train_loss_curve.back());
  if (report.best_dev_accuracy) {
    err << ", best dev accuracy " << FormatDouble(*report.best_dev_accuracy);
  }
  err << '\n';
  return kSuccess;
}

struct PredictArgs {
  std::string corpus;
  std::string model;
  std::string standardizer;
  std::string output;
};

int Predict(const PredictArgs& args, std::ostream& out, std::ostream& err) {
  const Corpus corpus = LoadCorpus(args.corpus);
  std::ifstream model_in(args.model);
  if (!model_in) throw DataError("cannot read '" + args.model + "'");
  const Model model = ReadModel(model_in);
  std::ifstream std_in(args.standardizer);
  if (!std_in) throw DataError("cannot read '" + args.standardizer + "'");
  const Standardizer standardizer = Standardizer::Read(std_in);

  std::ostringstream text;
  text << "id\tlang\tgender\tp_female\tpredicted\n";
  std::vector<int> preds, truth;
  for (const auto& a : corpus.authors()) {
    const FeatureVector x = standardizer.Transform(ExtractAuthorFeatures(a));
    const double p = std::visit(
        [&x](const auto& m) {
          using M = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<M, LogisticModel>) {
            return PredictLogistic(m, x);
          } else {
            return Forward(m, x);
          }
        },
        model);
    const int label = PredictLabel(p);
    preds.push_back(label);
    truth.push_back(GenderLabel(a.gender));
    text << a.id << '\t' << a.language << '\t' << GenderToken(a.gender) << '\t'
         << FormatDouble(p) << '\t' << (label ? "F" : "M") << '\n';
  }
  if (args.output.empty()) {
    out << text.str();
  } else {
    WriteFile(args.output, text.str());
  }
  if (!truth.empty()) {
    err << "predict: accuracy " << FormatDouble(Accuracy(preds, truth))
        << " on " << truth.size() << " authors\n";
  }
  return kSuccess;
}

template <typename F>
int Guard(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Language-independent stylometric gender prediction", "stylo"};
  app.require_subcommand(1);

  ConvertArgs convert;
  auto* convert_cmd =
      app.add_subcommand("convert", "Convert TwiSty-layout JSON to the corpus format");
  convert_cmd->add_option("-i,--input", convert.inputs, "TwiSty JSON file(s)")
      ->required();
  convert_cmd->add_option("-o,--output", convert.output, "Corpus file to write")
      ->required();
  convert_cmd->add_option("--lang", convert.lang,
                          "Language code for users without one "
                          "(default: inferred from TwiSty-XX file names)");

  ExtractArgs extract;
  auto* extract_cmd =
      app.add_subcommand("extract", "Write the feature matrix of a corpus");
  extract_cmd->add_option("-c,--corpus", extract.corpus, "Corpus file")->required();
  extract_cmd->add_option("-o,--output", extract.output,
                          "Feature matrix file (default: stdout)");

  ValidateArgs validate;
  auto* validate_cmd = app.add_subcommand(
      "validate", "Report per-language gender balance and tweet counts");
  validate_cmd->add_option("-c,--corpus", validate.corpus, "Corpus file")->required();
  validate_cmd->add_flag("--strict", validate.strict,
                         "Exit with status 2 if any language is unbalanced");

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic corpus");
  synth_cmd->add_option("--languages", synth.languages,
                        "Comma-separated language codes")
      ->capture_default_str();
  synth_cmd->add_option("--authors", synth.authors,
                        "Authors per language (even)")
      ->capture_default_str();
  synth_cmd->add_option("--tweets", synth.tweets, "Tweets per author")
      ->capture_default_str();
  synth_cmd->add_option("--signal", synth.signal,
                        "Gender separation on the signal features, in stds")
      ->capture_default_str();
  synth_cmd->add_flag("--vocabulary-signal", synth.vocabulary_signal,
                      "Signal gender through word choice only");
  synth_cmd->add_option("--seed", synth.seed, "Random seed")->capture_default_str();
  synth_cmd->add_option("-o,--output", synth.output,
                        "Corpus file (default: stdout)");

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run the IL or CL experiment");
  run_cmd->add_option("--setting", run.setting, "il or cl (overrides config)")
      ->check(CLI::IsMember({"il", "cl", "IL", "CL"}));
  run_cmd->add_option("-c,--corpus", run.corpus, "Corpus file")->required();
  run_cmd->add_option("--config", run.config, "key = value configuration file");
  run_cmd->add_option("--report", run.report,
                      "Write PREFIX.tsv and PREFIX.txt (default: TSV to stdout)");
  run_cmd->add_option("--set", run.sets, "Override a config key: key=value");
  run_cmd->add_option("--runs", run.runs, "Number of seeded runs");
  run_cmd->add_option("--base-seed", run.base_seed, "Seed of run 0");
  run_cmd->add_option("--models", run.models, "Comma-separated: LR,FFNN1,FFNN2,FFNN3");
  run_cmd->add_option("--holdout", run.holdout, "CL holdout languages");
  run_cmd->add_option("-j,--jobs", run.jobs, "Worker threads (0 = all cores)")
      ->capture_default_str();

  GradcheckArgs gradcheck;
  auto* gradcheck_cmd = app.add_subcommand(
      "gradcheck", "Compare backprop gradients with finite differences");
  gradcheck_cmd->add_option("--model", gradcheck.model,
                            "logistic, ffnn1, ffnn2 or ffnn3")
      ->capture_default_str();
  gradcheck_cmd->add_option("--input-dim", gradcheck.input_dim, "Input dimension")
      ->capture_default_str();
  gradcheck_cmd->add_option("--width", gradcheck.width, "Hidden width")
      ->capture_default_str();
  gradcheck_cmd->add_option("--seed", gradcheck.seed, "Random seed")
      ->capture_default_str();
  gradcheck_cmd->add_option("--epsilon", gradcheck.epsilon,
                            "Finite-difference step, in (0, 1e-2]")
      ->capture_default_str();
  gradcheck_cmd->add_option("--samples", gradcheck.samples,
                            "Random (input, label) pairs")
      ->capture_default_str();

  TrainArgs train;
  auto* train_cmd = app.add_subcommand(
      "train", "Train one model on a corpus and save it with its standardizer");
  train_cmd->add_option("-c,--corpus", train.corpus, "Corpus file")->required();
  train_cmd->add_option("--model", train.model, "LR, FFNN1, FFNN2 or FFNN3")
      ->capture_default_str();
  train_cmd->add_option("-o,--output", train.output, "Model file")->required();
  train_cmd->add_option("--standardizer", train.standardizer_output,
                        "Standardizer file")
      ->required();
  train_cmd->add_option("--languages", train.languages,
                        "Languages to train on (default: all)");
  train_cmd->add_option("--set", train.sets,
                        "Training override: train.<model>.<field>=value");
  train_cmd->add_option("--width", train.width, "Hidden width")->capture_default_str();
  train_cmd->add_option("--dev-fraction", train.dev_fraction,
                        "Dev share for early stopping (networks only)")
      ->capture_default_str();
  train_cmd->add_option("--seed", train.seed, "Random seed")->capture_default_str();

  PredictArgs predict;
  auto* predict_cmd =
      app.add_subcommand("predict", "Score a corpus with a saved model");
  predict_cmd->add_option("-c,--corpus", predict.corpus, "Corpus file")->required();
  predict_cmd->add_option("--model", predict.model, "Model file")->required();
  predict_cmd->add_option("--standardizer", predict.standardizer,
                          "Standardizer file")
      ->required();
  predict_cmd->add_option("-o,--output", predict.output,
                          "Predictions file (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err) == 0 ? kSuccess : kUsageError;
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err) == 0 ? kSuccess : kUsageError;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  return Guard(err, [&]() -> int {
    if (convert_cmd->parsed()) return Convert(convert, err);
    if (extract_cmd->parsed()) return Extract(extract, out, err);
    if (validate_cmd->parsed()) return Validate(validate, out);
    if (synth_cmd->parsed()) return Synth(synth, out, err);
    if (run_cmd->parsed()) return RunExperimentCommand(run, out, err);
    if (gradcheck_cmd->parsed()) return Gradcheck(gradcheck, out);
    if (train_cmd->parsed()) return Train(train, err);
    if (predict_cmd->parsed()) return Predict(predict, out, err);
    return kUsageError;
  });
}

}  // namespace stylo::cli
