#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <string>

#include "stylo/error.h"
#include "stylo/experiments.h"
#include "stylo/numeric_text.h"

namespace stylo {

std::string_view SettingName(Setting s) {
  return s == Setting::kIL ? "IL" : "CL";
}

std::optional<Setting> ParseSetting(std::string_view text) {
  if (text == "il" || text == "IL") return Setting::kIL;
  if (text == "cl" || text == "CL") return Setting::kCL;
  return std::nullopt;
}

TrainConfig ExperimentSpec::ConfigFor(ModelKind kind) const {
  if (auto it = train_overrides.find(kind); it != train_overrides.end()) {
    return it->second;
  }
  return kind == ModelKind::kLogistic ? TrainConfig::LogisticDefaults()
                                      : TrainConfig::MlpDefaults();
}

void ExperimentSpec::Validate() const {
  if (runs < 1) throw ConfigError("runs must be at least 1");
  if (models.empty()) throw ConfigError("models must name at least one model");
  if (hidden_width < 1) throw ConfigError("hidden_width must be at least 1");
  split.Validate();
  if (!(cl_dev_fraction >= 0.0 && cl_dev_fraction < 1.0)) {
    throw ConfigError("cl.dev_fraction must lie in [0, 1)");
  }
  if (setting == Setting::kCL && cl_holdout.empty()) {
    throw ConfigError("cl.holdout must name at least one language");
  }
  for (ModelKind kind : models) ConfigFor(kind).Validate();
}

namespace {

std::string Join(const std::vector<std::string>& items) {
  std::string out;
  for (size_t i = 0; i < items.size(); ++i) {
    if (i) out += ',';
    out += items[i];
  }
  return out;
}

std::string Lower(std::string_view s) {
  std::string out;
  for (char c : s) {
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

std::string_view TrimAscii(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string> ParseList(std::string_view value) {
  std::vector<std::string> out;
  if (TrimAscii(value).empty()) return out;
  for (auto item : SplitOn(value, ',')) {
    item = TrimAscii(item);
    if (!item.empty()) out.emplace_back(item);
  }
  return out;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> ExperimentSpec::Echo() const {
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("setting", Lower(SettingName(setting)));
  std::vector<std::string> names;
  for (ModelKind k : models) names.emplace_back(ModelKindName(k));
  out.emplace_back("models", Join(names));
  out.emplace_back("runs", std::to_string(runs));
  out.emplace_back("base_seed", std::to_string(base_seed));
  out.emplace_back("hidden_width", std::to_string(hidden_width));
  if (setting == Setting::kIL) {
    out.emplace_back("languages", Join(languages));
    out.emplace_back("split.train", FormatDouble(split.train_fraction));
    out.emplace_back("split.dev", FormatDouble(split.dev_fraction));
    out.emplace_back("split.test", FormatDouble(split.test_fraction));
  } else {
    out.emplace_back("cl.holdout", Join(cl_holdout));
    out.emplace_back("cl.dev_fraction", FormatDouble(cl_dev_fraction));
  }
  for (ModelKind k : models) {
    const TrainConfig c = ConfigFor(k);
    const std::string prefix = "train." + Lower(ModelKindName(k)) + ".";
    out.emplace_back(prefix + "learning_rate", FormatDouble(c.learning_rate));
    out.emplace_back(prefix + "max_epochs", std::to_string(c.max_epochs));
    out.emplace_back(prefix + "batch_size", std::to_string(c.batch_size));
    out.emplace_back(prefix + "l2", FormatDouble(c.l2));
    out.emplace_back(prefix + "patience", std::to_string(c.patience));
  }
  return out;
}

void ApplyConfigValue(ExperimentSpec& spec, std::string_view key_in,
                      std::string_view value_in) {
  const std::string key(TrimAscii(key_in));
  const std::string_view value = TrimAscii(value_in);
  const auto bad_value = [&](const std::string& why) {
    return ConfigError("config key '" + key + "': " + why + " (got '" +
                       std::string(value) + "')");
  };
  const auto as_double = [&] {
    try {
      return ParseDouble(value);
    } catch (const DataError&) {
      throw bad_value("expected a number");
    }
  };
  const auto as_count = [&] {
    try {
      return ParseInteger<size_t>(value);
    } catch (const DataError&) {
      throw bad_value("expected a non-negative integer");
    }
  };

  if (key == "setting") {
    auto s = ParseSetting(value);
    if (!s) throw bad_value("expected il or cl");
    spec.setting = *s;
  } else if (key == "models") {
    std::vector<ModelKind> models;
    for (const auto& name : ParseList(value)) {
      auto kind = ParseModelKind(name);
      if (!kind) throw bad_value("unknown model '" + name + "'");
      if (std::find(models.begin(), models.end(), *kind) == models.end()) {
        models.push_back(*kind);
      }
    }
    spec.models = models;
  } else if (key == "runs") {
    spec.runs = as_count();
  } else if (key == "base_seed") {
    try {
      spec.base_seed = ParseInteger<uint64_t>(value);
    } catch (const DataError&) {
      throw bad_value("expected an unsigned integer");
    }
  } else if (key == "hidden_width") {
    spec.hidden_width = as_count();
  } else if (key == "languages") {
    spec.languages = ParseList(value);
  } else if (key == "split.train") {
    spec.split.train_fraction = as_double();
  } else if (key == "split.dev") {
    spec.split.dev_fraction = as_double();
  } else if (key == "split.test") {
    spec.split.test_fraction = as_double();
  } else if (key == "cl.holdout") {
    spec.cl_holdout = ParseList(value);
  } else if (key == "cl.dev_fraction") {
    spec.cl_dev_fraction = as_double();
  } else if (key.starts_with("train.")) {
    // train.<model>.<field>; model "ffnn" applies to all three networks.
    const auto parts = SplitOn(key, '.');
    if (parts.size() != 3) throw ConfigError("unknown config key '" + key + "'");
    std::vector<ModelKind> targets;
    if (parts[1] == "ffnn") {
      targets = {ModelKind::kFfnn1, ModelKind::kFfnn2, ModelKind::kFfnn3};
    } else if (auto kind = ParseModelKind(parts[1])) {
      targets = {*kind};
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
    const std::string_view field = parts[2];
    for (ModelKind kind : targets) {
      TrainConfig c = spec.ConfigFor(kind);
      if (field == "learning_rate") {
        c.learning_rate = as_double();
      } else if (field == "max_epochs") {
        c.max_epochs = as_count();
      } else if (field == "batch_size") {
        c.batch_size = as_count();
      } else if (field == "l2") {
        c.l2 = as_double();
      } else if (field == "patience") {
        c.patience = as_count();
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
      spec.train_overrides[kind] = c;
    }
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

void ApplyConfigStream(ExperimentSpec& spec, std::istream& in) {
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string_view content = TrimAscii(line);
    if (content.empty()) continue;
    const size_t eq = content.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key = value");
    }
    ApplyConfigValue(spec, content.substr(0, eq), content.substr(eq + 1));
  }
}

ExperimentSpec LoadExperimentConfig(const std::string& path,
                                    ExperimentSpec base) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config file '" + path + "'");
  ApplyConfigStream(base, in);
  return base;
}

}  // namespace stylo
