#ifndef STYLO_FEATURES_H_
#define STYLO_FEATURES_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "stylo/corpus.h"

namespace stylo {

inline constexpr int kSchemaVersion = 1;

// Column positions of schema v1.
enum FeatureIndex : size_t {
  kAvgCharsPerTweet = 0,
  kAvgTokensPerTweet,
  kAvgCharsPerToken,
  kAvgSentencesPerTweet,
  kPunctPeriod,
  kPunctComma,
  kPunctQuestion,
  kPunctExclamation,
  kPunctColon,
  kPunctSemicolon,
  kPunctApostrophe,
  kPunctQuote,
  kPunctHyphen,
  kPunctLeftParen,
  kPunctRightParen,
  kHashtagsPerTweet,
  kMentionsPerTweet,
  kUrlsPerTweet,
  kDigitsPerTweet,
  kEmojiPerTweet,
  kElongationsPerTweet,
  kFeatureCountV1,
};

// Marks counted per sentence, in schema order.
inline constexpr char32_t kPunctuationMarks[] = {
    U'.', U',', U'?', U'!', U':', U';', U'\'', U'"', U'-', U'(', U')'};

struct FeatureSchema {
  std::vector<std::string> names;
  int version = kSchemaVersion;

  size_t size() const { return names.size(); }
  static const FeatureSchema& V1();
};

struct TweetStats {
  size_t char_count = 0;
  size_t token_count = 0;
  size_t sentence_count = 0;
  // Only the tracked marks, only non-zero entries. Curly quotes are folded.
  std::map<char32_t, size_t> punctuation_counts;
  size_t hashtag_count = 0;
  size_t mention_count = 0;
  size_t url_count = 0;
  size_t digit_count = 0;
  size_t emoji_count = 0;
  size_t elongation_count = 0;
  // Length statistics over tokens that are not URLs.
  size_t word_token_count = 0;
  size_t word_char_count = 0;

  bool operator==(const TweetStats&) const = default;
};

struct FeatureVector {
  std::vector<double> values;
  int schema_version = kSchemaVersion;

  size_t size() const { return values.size(); }
  bool operator==(const FeatureVector&) const = default;
};

inline constexpr std::string_view kUrlToken = "<URL>";

bool IsSentenceTerminal(char32_t c);
// Cuts after each run of terminal marks that is followed by whitespace or
// the end of the text. Sentences are trimmed; empty ones are dropped.
std::vector<std::u32string> SplitSentences(std::u32string_view text);
std::vector<std::string> SplitSentences(std::string_view utf8);

// Whitespace tokenization; http:// and https:// tokens become kUrlToken.
std::vector<std::string> Tokenize(std::string_view utf8);
bool IsUrlToken(std::u32string_view token);

// All counts are zero for a tweet that is empty after trimming.
TweetStats ComputeTweetStats(std::string_view tweet);

// Throws DataError on an empty tweet list, ConfigError on an unsupported
// schema.
FeatureVector ExtractAuthorFeatures(
    const Author& author, const FeatureSchema& schema = FeatureSchema::V1());

struct FeatureRow {
  std::string id;
  std::string language;
  Gender gender = Gender::kFemale;
  FeatureVector features;

  bool operator==(const FeatureRow&) const = default;
};

struct FeatureMatrix {
  FeatureSchema schema;
  std::vector<FeatureRow> rows;
};

FeatureMatrix ExtractCorpusFeatures(
    const Corpus& corpus, const FeatureSchema& schema = FeatureSchema::V1());

// Tab-separated: a "#stylo-features schema_version=N" line, a column-name
// line (id, lang, gender, features...), then one row per author.
void WriteFeatureMatrix(const FeatureMatrix& matrix, std::ostream& out);
FeatureMatrix ReadFeatureMatrix(std::istream& in);

}  // namespace stylo

#endif  // STYLO_FEATURES_H_
