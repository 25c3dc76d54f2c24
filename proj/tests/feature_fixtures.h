// Hand-scored tweets shared by the feature unit tests and the acceptance
// binary. Every count below was worked out by hand from the extraction
// rules, not by running the extractor.
#ifndef STYLO_TESTS_FEATURE_FIXTURES_H_
#define STYLO_TESTS_FEATURE_FIXTURES_H_

#include <map>
#include <string>
#include <vector>

#include "stylo/features.h"
#include "stylo/unicode.h"

namespace stylo::testing {

struct TweetFixture {
  std::string text;
  TweetStats expected;
};

inline TweetStats Stats(size_t chars, size_t tokens, size_t sentences,
                        std::map<char32_t, size_t> punct, size_t hashtags,
                        size_t mentions, size_t urls, size_t digits,
                        size_t emoji, size_t elongations, size_t word_tokens,
                        size_t word_chars) {
  TweetStats s;
  s.char_count = chars;
  s.token_count = tokens;
  s.sentence_count = sentences;
  s.punctuation_counts = std::move(punct);
  s.hashtag_count = hashtags;
  s.mention_count = mentions;
  s.url_count = urls;
  s.digit_count = digits;
  s.emoji_count = emoji;
  s.elongation_count = elongations;
  s.word_token_count = word_tokens;
  s.word_char_count = word_chars;
  return s;
}

inline std::vector<TweetFixture> HandScoredTweets() {
  return {
      {"Why?? #yes :) soooo",
       Stats(19, 4, 2, {{U'?', 2}, {U':', 1}, {U')', 1}}, 1, 0, 0, 0, 0, 1, 4,
             16)},
      {"Hi there. How are you?",
       Stats(22, 5, 2, {{U'.', 1}, {U'?', 1}}, 0, 0, 0, 0, 0, 0, 5, 18)},
      {"", TweetStats{}},
      {"   ", TweetStats{}},
      {"123 abc", Stats(7, 2, 1, {}, 0, 0, 0, 3, 0, 0, 2, 6)},
      {"see https://x.co now",
       Stats(20, 3, 1, {{U'.', 1}, {U':', 1}}, 0, 0, 1, 0, 0, 0, 2, 6)},
      {"@anna lol!!! ok",
       Stats(15, 3, 2, {{U'!', 3}}, 0, 1, 0, 0, 0, 0, 3, 13)},
      {"Well… maybe; maybe not (really)",
       Stats(31, 5, 2, {{U';', 1}, {U'(', 1}, {U')', 1}}, 0, 0, 0, 0, 0, 0,
             5, 27)},
      {"I ♥ NY \U0001F600\U0001F600 2024!",
       Stats(15, 5, 1, {{U'!', 1}}, 0, 0, 0, 4, 3, 0, 5, 11)},
      {"‘quoted’ and “double” - yes",
       Stats(27, 5, 1, {{U'\'', 2}, {U'"', 2}, {U'-', 1}}, 0, 0, 0, 0, 0, 0,
             5, 23)},
      {"Nooooo!!! Whyyy?? #sad #sad",
       Stats(27, 4, 3, {{U'!', 3}, {U'?', 2}}, 2, 0, 0, 0, 0, 2, 4, 24)},
      {"Ça va? Très bien, merci.",
       Stats(24, 5, 2, {{U'?', 1}, {U',', 1}, {U'.', 1}}, 0, 0, 0, 0, 0, 0, 5,
             20)},
      {"e.g. this is it",
       Stats(15, 4, 2, {{U'.', 2}}, 0, 0, 0, 0, 0, 0, 4, 12)},
      {"https://t.co/abc",
       Stats(16, 1, 1, {{U':', 1}, {U'.', 1}}, 0, 0, 1, 0, 0, 0, 0, 0)},
  };
}

// Bijective substitution over ASCII letters and a few accented Latin
// letters. Tokens that are URLs pass through untouched.
inline char32_t CipherLetter(char32_t c) {
  if (c >= U'a' && c <= U'z') return U'a' + (c - U'a' + 7) % 26;
  if (c >= U'A' && c <= U'Z') return U'A' + (c - U'A' + 11) % 26;
  switch (c) {
    case U'ç': return U'ñ';
    case U'ñ': return U'ç';
    case U'è': return U'é';
    case U'é': return U'è';
    case U'Ç': return U'Ö';
    case U'Ö': return U'Ç';
    default: return c;
  }
}

inline std::string Encipher(const std::string& tweet) {
  std::u32string text = unicode::Decode(tweet);
  std::u32string out;
  size_t i = 0;
  while (i < text.size()) {
    if (unicode::IsWhitespace(text[i])) {
      out.push_back(text[i++]);
      continue;
    }
    size_t j = i;
    while (j < text.size() && !unicode::IsWhitespace(text[j])) ++j;
    std::u32string_view token(text.data() + i, j - i);
    if (IsUrlToken(token)) {
      out.append(token);
    } else {
      for (char32_t c : token) out.push_back(CipherLetter(c));
    }
    i = j;
  }
  return unicode::Encode(out);
}

}  // namespace stylo::testing

#endif  // STYLO_TESTS_FEATURE_FIXTURES_H_
