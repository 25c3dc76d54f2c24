#ifndef STYLO_CORPUS_H_
#define STYLO_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stylo {

// Training targets use Female=1, Male=0.
enum class Gender { kFemale, kMale };

inline int GenderLabel(Gender g) { return g == Gender::kFemale ? 1 : 0; }
inline std::string_view GenderToken(Gender g) {
  return g == Gender::kFemale ? "F" : "M";
}
// Accepts "F"/"M" only; the native format is strict.
std::optional<Gender> ParseGenderToken(std::string_view token);

struct Author {
  std::string id;
  std::string language;
  Gender gender = Gender::kFemale;
  std::vector<std::string> tweets;

  bool operator==(const Author&) const = default;
};

// Non-empty, no uppercase ASCII, no whitespace or control characters.
bool IsValidLanguageCode(std::string_view code);

class Corpus {
 public:
  Corpus() = default;
  // Validates every author (non-empty tweets, language code, unique ids)
  // and builds the language index. Throws DataError.
  explicit Corpus(std::vector<Author> authors);

  const std::vector<Author>& authors() const { return authors_; }
  size_t size() const { return authors_.size(); }
  const Author& operator[](size_t i) const { return authors_[i]; }

  // Positions into authors(), in corpus order.
  const std::map<std::string, std::vector<size_t>>& by_language() const {
    return by_language_;
  }
  std::vector<std::string> languages() const;
  bool HasLanguage(std::string_view lang) const;
  // Throws DataError for an unknown id.
  size_t PositionOf(std::string_view id) const;

  bool operator==(const Corpus& other) const {
    return authors_ == other.authors_;
  }

 private:
  std::vector<Author> authors_;
  std::map<std::string, std::vector<size_t>> by_language_;
  std::map<std::string, size_t, std::less<>> position_;
};

// One author per line as a JSON object with keys id, lang, gender, tweets.
Corpus LoadCorpus(const std::filesystem::path& path);
Corpus ReadCorpus(std::istream& in);
void WriteCorpus(const Corpus& corpus, std::ostream& out);
void SaveCorpus(const Corpus& corpus, const std::filesystem::path& path);
std::string AuthorToRecord(const Author& author);

// Reads TwiSty-layout JSON: an object keyed by user id (optionally nested
// under "users") whose entries carry "gender" and "tweets" (strings, or
// objects with a "text" field) and optionally "lang". Users that fail
// validation are skipped and described in `skipped`. Throws DataError when
// the document itself is unreadable.
std::vector<Author> ParseTwisty(std::istream& in, std::string_view default_lang,
                                std::vector<std::string>* skipped);

struct LanguageBalance {
  std::string language;
  size_t female = 0;
  size_t male = 0;
  bool balanced = false;
  size_t min_tweets = 0;
  size_t max_tweets = 0;
  double mean_tweets = 0.0;
};

// Sorted by language code.
std::vector<LanguageBalance> ValidateBalance(const Corpus& corpus);

struct SplitSpec {
  double train_fraction = 0.8;
  double dev_fraction = 0.1;
  double test_fraction = 0.1;
  uint64_t seed = 0;

  // Throws ConfigError unless each fraction is in [0,1] and they sum to 1
  // within 1e-9.
  void Validate() const;
};

struct DataSplit {
  std::vector<std::string> train;
  std::vector<std::string> dev;
  std::vector<std::string> test;

  bool operator==(const DataSplit&) const = default;
};

// Within each (language, gender) cell: seeded shuffle, then cut at the
// cumulative fraction boundaries using largest-remainder rounding.
DataSplit StratifiedSplit(const Corpus& corpus,
                          const std::vector<std::string>& languages,
                          const SplitSpec& spec);

// Per-cell allocation used by StratifiedSplit; exposed for testing.
std::vector<size_t> LargestRemainderCounts(size_t n,
                                           const std::vector<double>& fractions);

struct SynthConfig {
  std::vector<std::string> languages{"aa", "bb"};
  size_t authors_per_language = 100;  // must be even
  size_t tweets_per_author = 200;
  // Gender separation, in between-author standard deviations, injected into
  // the question-mark rate, tweet length and hashtag rate.
  double signal_strength = 1.0;
  // When set, gender is signalled only through word choice from the
  // language's lexicon; surface statistics carry no gender information.
  bool vocabulary_signal = false;
  uint64_t seed = 0;

  void Validate() const;
};

Corpus SynthCorpus(const SynthConfig& config);

}  // namespace stylo

#endif  // STYLO_CORPUS_H_
