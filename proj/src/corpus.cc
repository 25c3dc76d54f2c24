#include "stylo/corpus.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "stylo/error.h"
#include "stylo/random.h"

namespace stylo {

std::optional<Gender> ParseGenderToken(std::string_view token) {
  if (token == "F") return Gender::kFemale;
  if (token == "M") return Gender::kMale;
  return std::nullopt;
}

bool IsValidLanguageCode(std::string_view code) {
  if (code.empty()) return false;
  for (unsigned char c : code) {
    if (c <= 0x20 || c == 0x7F || (c >= 'A' && c <= 'Z')) return false;
  }
  return true;
}

Corpus::Corpus(std::vector<Author> authors) : authors_(std::move(authors)) {
  for (size_t i = 0; i < authors_.size(); ++i) {
    const Author& a = authors_[i];
    if (a.id.empty()) {
      throw DataError("author at position " + std::to_string(i) +
                      " has an empty id");
    }
    if (a.tweets.empty()) {
      throw DataError("author '" + a.id + "' has an empty tweets list");
    }
    if (!IsValidLanguageCode(a.language)) {
      throw DataError("author '" + a.id + "' has invalid language code '" +
                      a.language + "'");
    }
    if (!position_.emplace(a.id, i).second) {
      throw DataError("duplicate author id '" + a.id + "'");
    }
    by_language_[a.language].push_back(i);
  }
}

std::vector<std::string> Corpus::languages() const {
  std::vector<std::string> out;
  out.reserve(by_language_.size());
  for (const auto& [lang, _] : by_language_) out.push_back(lang);
  return out;
}

bool Corpus::HasLanguage(std::string_view lang) const {
  return by_language_.contains(std::string(lang));
}

size_t Corpus::PositionOf(std::string_view id) const {
  auto it = position_.find(id);
  if (it == position_.end()) {
    throw DataError("unknown author id '" + std::string(id) + "'");
  }
  return it->second;
}

namespace {

Author ParseRecord(const std::string& line, size_t line_no) {
  const auto where = [&] { return "line " + std::to_string(line_no) + ": "; };
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(where() + "malformed record: " + e.what());
  }
  if (!j.is_object()) throw DataError(where() + "record is not an object");
  for (const char* key : {"id", "lang", "gender"}) {
    if (!j.contains(key) || !j[key].is_string()) {
      throw DataError(where() + "missing or non-string field '" + key + "'");
    }
  }
  Author a;
  a.id = j["id"].get<std::string>();
  a.language = j["lang"].get<std::string>();
  const auto gender_token = j["gender"].get<std::string>();
  const auto gender = ParseGenderToken(gender_token);
  if (!gender) {
    throw DataError(where() + "author '" + a.id + "' has unknown gender '" +
                    gender_token + "'");
  }
  a.gender = *gender;
  if (!j.contains("tweets") || !j["tweets"].is_array()) {
    throw DataError(where() + "author '" + a.id +
                    "' is missing the tweets array");
  }
  for (const auto& t : j["tweets"]) {
    if (!t.is_string()) {
      throw DataError(where() + "author '" + a.id + "' has a non-string tweet");
    }
    a.tweets.push_back(t.get<std::string>());
  }
  if (a.tweets.empty()) {
    throw DataError(where() + "author '" + a.id + "' has an empty tweets list");
  }
  if (!IsValidLanguageCode(a.language)) {
    throw DataError(where() + "author '" + a.id +
                    "' has invalid language code '" + a.language + "'");
  }
  return a;
}

}  // namespace

Corpus ReadCorpus(std::istream& in) {
  std::vector<Author> authors;
  std::map<std::string, size_t> seen;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    Author a = ParseRecord(line, line_no);
    if (auto [it, inserted] = seen.emplace(a.id, line_no); !inserted) {
      throw DataError("line " + std::to_string(line_no) +
                      ": duplicate author id '" + a.id + "' (first on line " +
                      std::to_string(it->second) + ")");
    }
    authors.push_back(std::move(a));
  }
  return Corpus(std::move(authors));
}

Corpus LoadCorpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open corpus file '" + path.string() + "'");
  return ReadCorpus(in);
}

std::string AuthorToRecord(const Author& author) {
  nlohmann::ordered_json j;
  j["id"] = author.id;
  j["lang"] = author.language;
  j["gender"] = std::string(GenderToken(author.gender));
  j["tweets"] = author.tweets;
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

void WriteCorpus(const Corpus& corpus, std::ostream& out) {
  for (const auto& a : corpus.authors()) out << AuthorToRecord(a) << '\n';
}

void SaveCorpus(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  WriteCorpus(corpus, out);
  if (!out) throw DataError("write failed for '" + path.string() + "'");
}

std::vector<LanguageBalance> ValidateBalance(const Corpus& corpus) {
  std::vector<LanguageBalance> report;
  for (const auto& [lang, positions] : corpus.by_language()) {
    LanguageBalance b;
    b.language = lang;
    b.min_tweets = SIZE_MAX;
    size_t total = 0;
    for (size_t p : positions) {
      const Author& a = corpus[p];
      (a.gender == Gender::kFemale ? b.female : b.male)++;
      b.min_tweets = std::min(b.min_tweets, a.tweets.size());
      b.max_tweets = std::max(b.max_tweets, a.tweets.size());
      total += a.tweets.size();
    }
    b.balanced = b.female == b.male;
    b.mean_tweets = static_cast<double>(total) / positions.size();
    report.push_back(b);
  }
  return report;
}

void SplitSpec::Validate() const {
  for (double f : {train_fraction, dev_fraction, test_fraction}) {
    if (!(f >= 0.0 && f <= 1.0)) {
      throw ConfigError("split fractions must lie in [0, 1]");
    }
  }
  if (std::abs(train_fraction + dev_fraction + test_fraction - 1.0) > 1e-9) {
    throw ConfigError("split fractions must sum to 1");
  }
}

std::vector<size_t> LargestRemainderCounts(
    size_t n, const std::vector<double>& fractions) {
  std::vector<size_t> counts(fractions.size());
  std::vector<double> remainders(fractions.size());
  size_t assigned = 0;
  for (size_t k = 0; k < fractions.size(); ++k) {
    const double quota = fractions[k] * static_cast<double>(n);
    counts[k] = static_cast<size_t>(std::floor(quota));
    remainders[k] = quota - std::floor(quota);
    assigned += counts[k];
  }
  std::vector<size_t> order(fractions.size());
  std::iota(order.begin(), order.end(), 0);
  // Ties go to the earlier part (train before dev before test).
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return remainders[a] > remainders[b];
  });
  for (size_t k = 0; assigned < n; k = (k + 1) % order.size()) {
    if (fractions[order[k]] > 0.0) {
      ++counts[order[k]];
      ++assigned;
    }
  }
  return counts;
}

DataSplit StratifiedSplit(const Corpus& corpus,
                          const std::vector<std::string>& languages,
                          const SplitSpec& spec) {
  spec.Validate();
  const std::vector<double> fractions{spec.train_fraction, spec.dev_fraction,
                                      spec.test_fraction};
  const auto nonzero = static_cast<size_t>(
      std::count_if(fractions.begin(), fractions.end(),
                    [](double f) { return f > 0.0; }));

  std::vector<std::string> langs = languages;
  std::sort(langs.begin(), langs.end());
  langs.erase(std::unique(langs.begin(), langs.end()), langs.end());

  DataSplit split;
  for (const auto& lang : langs) {
    auto it = corpus.by_language().find(lang);
    if (it == corpus.by_language().end()) {
      throw DataError("language '" + lang + "' is not present in the corpus");
    }
    for (Gender g : {Gender::kFemale, Gender::kMale}) {
      std::vector<std::string> ids;
      for (size_t p : it->second) {
        if (corpus[p].gender == g) ids.push_back(corpus[p].id);
      }
      if (ids.size() < nonzero) {
        throw DataError("cell (" + lang + ", " + std::string(GenderToken(g)) +
                        ") has " + std::to_string(ids.size()) +
                        " authors, fewer than the " + std::to_string(nonzero) +
                        " non-empty split parts");
      }
      Rng rng(DeriveSeed(spec.seed, "split/" + lang + "/" +
                                        std::string(GenderToken(g))));
      rng.Shuffle(std::span(ids));
      const auto counts = LargestRemainderCounts(ids.size(), fractions);
      std::vector<std::string>* parts[] = {&split.train, &split.dev,
                                           &split.test};
      auto cursor = ids.begin();
      for (size_t k = 0; k < 3; ++k) {
        parts[k]->insert(parts[k]->end(), cursor, cursor + counts[k]);
        cursor += static_cast<std::ptrdiff_t>(counts[k]);
      }
    }
  }
  return split;
}

}  // namespace stylo
