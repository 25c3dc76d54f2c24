#include "stylo/features.h"

#include <algorithm>
#include <cmath>

#include "stylo/error.h"
#include "stylo/unicode.h"

namespace stylo {

namespace uc = unicode;

const FeatureSchema& FeatureSchema::V1() {
  static const FeatureSchema schema{
      {
          "avg_chars_per_tweet",
          "avg_tokens_per_tweet",
          "avg_chars_per_token",
          "avg_sentences_per_tweet",
          "period_per_sentence",
          "comma_per_sentence",
          "question_per_sentence",
          "exclamation_per_sentence",
          "colon_per_sentence",
          "semicolon_per_sentence",
          "apostrophe_per_sentence",
          "quote_per_sentence",
          "hyphen_per_sentence",
          "lparen_per_sentence",
          "rparen_per_sentence",
          "hashtags_per_tweet",
          "mentions_per_tweet",
          "urls_per_tweet",
          "digits_per_tweet",
          "emoji_per_tweet",
          "elongations_per_tweet",
      },
      kSchemaVersion};
  return schema;
}

bool IsSentenceTerminal(char32_t c) {
  return c == U'.' || c == U'!' || c == U'?' || c == 0x2026;
}

std::vector<std::u32string> SplitSentences(std::u32string_view text) {
  std::vector<std::u32string> out;
  const auto flush = [&out](std::u32string_view piece) {
    auto trimmed = uc::Trim(piece);
    if (!trimmed.empty()) out.emplace_back(trimmed);
  };
  size_t start = 0;
  size_t i = 0;
  while (i < text.size()) {
    if (!IsSentenceTerminal(text[i])) {
      ++i;
      continue;
    }
    while (i < text.size() && IsSentenceTerminal(text[i])) ++i;
    if (i == text.size() || uc::IsWhitespace(text[i])) {
      flush(text.substr(start, i - start));
      start = i;
    }
  }
  flush(text.substr(start));
  return out;
}

std::vector<std::string> SplitSentences(std::string_view utf8) {
  std::vector<std::string> out;
  for (const auto& s : SplitSentences(uc::Decode(utf8))) {
    out.push_back(uc::Encode(s));
  }
  return out;
}

bool IsUrlToken(std::u32string_view token) {
  const auto has_prefix = [token](std::u32string_view prefix) {
    if (token.size() < prefix.size()) return false;
    for (size_t i = 0; i < prefix.size(); ++i) {
      char32_t c = token[i];
      if (c >= U'A' && c <= U'Z') c += U'a' - U'A';
      if (c != prefix[i]) return false;
    }
    return true;
  };
  return has_prefix(U"http://") || has_prefix(U"https://");
}

namespace {

std::vector<std::u32string_view> SplitWhitespace(std::u32string_view text) {
  std::vector<std::u32string_view> tokens;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && uc::IsWhitespace(text[i])) ++i;
    const size_t begin = i;
    while (i < text.size() && !uc::IsWhitespace(text[i])) ++i;
    if (i > begin) tokens.push_back(text.substr(begin, i - begin));
  }
  return tokens;
}

}  // namespace

std::vector<std::string> Tokenize(std::string_view utf8) {
  const std::u32string text = uc::Decode(utf8);
  std::vector<std::string> out;
  for (auto token : SplitWhitespace(text)) {
    out.push_back(IsUrlToken(token) ? std::string(kUrlToken)
                                    : uc::Encode(token));
  }
  return out;
}

TweetStats ComputeTweetStats(std::string_view tweet) {
  TweetStats st;
  std::u32string text = uc::Decode(tweet);
  if (uc::Trim(text).empty()) return st;
  for (auto& c : text) c = uc::FoldQuote(c);

  st.char_count = text.size();
  st.sentence_count = SplitSentences(std::u32string_view(text)).size();

  for (auto token : SplitWhitespace(text)) {
    ++st.token_count;
    if (IsUrlToken(token)) {
      ++st.url_count;
      continue;
    }
    ++st.word_token_count;
    st.word_char_count += token.size();
    if (token.front() == U'#') ++st.hashtag_count;
    if (token.front() == U'@') ++st.mention_count;
  }

  for (size_t i = 0; i < text.size(); ++i) {
    const char32_t c = text[i];
    if (std::find(std::begin(kPunctuationMarks), std::end(kPunctuationMarks),
                  c) != std::end(kPunctuationMarks)) {
      ++st.punctuation_counts[c];
    }
    if (uc::IsDecimalDigit(c)) ++st.digit_count;
    if (uc::IsEmoji(c)) ++st.emoji_count;
    if (uc::IsLetter(c) && (i == 0 || text[i - 1] != c)) {
      size_t run = 1;
      while (i + run < text.size() && text[i + run] == c) ++run;
      if (run >= 3) ++st.elongation_count;
    }
  }
  return st;
}

namespace {

// Mean of non-negative rationals, accumulated exactly per denominator so the
// result does not depend on the order of the terms, and doubling the
// multiset of terms leaves it bitwise unchanged.
class RationalMean {
 public:
  void Add(uint64_t numerator, uint64_t denominator) {
    ++count_;
    if (numerator == 0) return;
    sums_[denominator] += numerator;
  }
  void AddZero() { ++count_; }

  double Value() const {
    if (count_ == 0) return 0.0;
    double total = 0.0;
    for (const auto& [den, num] : sums_) {
      total += static_cast<double>(num) / static_cast<double>(den);
    }
    return total / static_cast<double>(count_);
  }

 private:
  std::map<uint64_t, uint64_t> sums_;
  uint64_t count_ = 0;
};

}  // namespace

FeatureVector ExtractAuthorFeatures(const Author& author,
                                    const FeatureSchema& schema) {
  if (schema.version != kSchemaVersion || schema.size() != kFeatureCountV1) {
    throw ConfigError("unsupported feature schema version " +
                      std::to_string(schema.version));
  }
  if (author.tweets.empty()) {
    throw DataError("author '" + author.id + "' has no tweets");
  }
  std::vector<RationalMean> acc(kFeatureCountV1);
  for (const auto& tweet : author.tweets) {
    const TweetStats st = ComputeTweetStats(tweet);
    acc[kAvgCharsPerTweet].Add(st.char_count, 1);
    acc[kAvgTokensPerTweet].Add(st.token_count, 1);
    if (st.word_token_count > 0) {
      acc[kAvgCharsPerToken].Add(st.word_char_count, st.word_token_count);
    } else {
      acc[kAvgCharsPerToken].AddZero();
    }
    acc[kAvgSentencesPerTweet].Add(st.sentence_count, 1);
    for (size_t k = 0; k < std::size(kPunctuationMarks); ++k) {
      auto it = st.punctuation_counts.find(kPunctuationMarks[k]);
      const size_t count = it == st.punctuation_counts.end() ? 0 : it->second;
      if (st.sentence_count > 0) {
        acc[kPunctPeriod + k].Add(count, st.sentence_count);
      } else {
        acc[kPunctPeriod + k].AddZero();
      }
    }
    acc[kHashtagsPerTweet].Add(st.hashtag_count, 1);
    acc[kMentionsPerTweet].Add(st.mention_count, 1);
    acc[kUrlsPerTweet].Add(st.url_count, 1);
    acc[kDigitsPerTweet].Add(st.digit_count, 1);
    acc[kEmojiPerTweet].Add(st.emoji_count, 1);
    acc[kElongationsPerTweet].Add(st.elongation_count, 1);
  }
  FeatureVector fv;
  fv.schema_version = schema.version;
  fv.values.reserve(kFeatureCountV1);
  for (const auto& a : acc) fv.values.push_back(a.Value());
  return fv;
}

FeatureMatrix ExtractCorpusFeatures(const Corpus& corpus,
                                    const FeatureSchema& schema) {
  FeatureMatrix m;
  m.schema = schema;
  m.rows.reserve(corpus.size());
  for (const auto& a : corpus.authors()) {
    m.rows.push_back({a.id, a.language, a.gender,
                      ExtractAuthorFeatures(a, schema)});
  }
  return m;
}

}  // namespace stylo
