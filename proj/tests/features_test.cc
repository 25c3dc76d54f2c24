#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>
#include <thread>

#include "feature_fixtures.h"
#include "stylo/corpus.h"
#include "stylo/error.h"
#include "stylo/features.h"
#include "stylo/random.h"

namespace stylo {
namespace {

using testing::Encipher;
using testing::HandScoredTweets;

Author MakeAuthor(std::vector<std::string> tweets) {
  return Author{"a1", "xx", Gender::kFemale, std::move(tweets)};
}

TEST(SplitSentences, CutsAfterTerminalRuns) {
  EXPECT_EQ(SplitSentences("Hi there. How are you?"),
            (std::vector<std::string>{"Hi there.", "How are you?"}));
  EXPECT_EQ(SplitSentences("Why?? #yes :) soooo"),
            (std::vector<std::string>{"Why??", "#yes :) soooo"}));
  EXPECT_EQ(SplitSentences("x.co is fine"),
            (std::vector<std::string>{"x.co is fine"}));
  EXPECT_EQ(SplitSentences("Wait… what"),
            (std::vector<std::string>{"Wait…", "what"}));
}

TEST(SplitSentences, EmptyAndBlank) {
  EXPECT_TRUE(SplitSentences("").empty());
  EXPECT_TRUE(SplitSentences(" \t ").empty());
  EXPECT_EQ(SplitSentences("  !!!  ").size(), 1u);
}

TEST(Tokenize, ReplacesUrls) {
  EXPECT_EQ(Tokenize("see https://t.co/x now"),
            (std::vector<std::string>{"see", "<URL>", "now"}));
  EXPECT_EQ(Tokenize("HTTP://A.B"), (std::vector<std::string>{"<URL>"}));
  EXPECT_EQ(Tokenize("http:/ nope"),
            (std::vector<std::string>{"http:/", "nope"}));
  EXPECT_TRUE(Tokenize("   ").empty());
}

TEST(TweetStats, HandScoredFixtures) {
  for (const auto& f : HandScoredTweets()) {
    SCOPED_TRACE(f.text);
    TweetStats got = ComputeTweetStats(f.text);
    EXPECT_EQ(got.char_count, f.expected.char_count);
    EXPECT_EQ(got.token_count, f.expected.token_count);
    EXPECT_EQ(got.sentence_count, f.expected.sentence_count);
    EXPECT_EQ(got.punctuation_counts, f.expected.punctuation_counts);
    EXPECT_EQ(got.hashtag_count, f.expected.hashtag_count);
    EXPECT_EQ(got.mention_count, f.expected.mention_count);
    EXPECT_EQ(got.url_count, f.expected.url_count);
    EXPECT_EQ(got.digit_count, f.expected.digit_count);
    EXPECT_EQ(got.emoji_count, f.expected.emoji_count);
    EXPECT_EQ(got.elongation_count, f.expected.elongation_count);
    EXPECT_EQ(got.word_token_count, f.expected.word_token_count);
    EXPECT_EQ(got.word_char_count, f.expected.word_char_count);
  }
}

TEST(TweetStats, ElongationCountsRunsNotLetters) {
  EXPECT_EQ(ComputeTweetStats("soooooooo").elongation_count, 1u);
  EXPECT_EQ(ComputeTweetStats("sooo goood").elongation_count, 2u);
  EXPECT_EQ(ComputeTweetStats("see").elongation_count, 0u);
  EXPECT_EQ(ComputeTweetStats("!!!").elongation_count, 0u);
  EXPECT_EQ(ComputeTweetStats("111").elongation_count, 0u);
}

TEST(TweetStats, HashOrAtInsideUrlIsNotCounted) {
  TweetStats s = ComputeTweetStats("https://x.co/#frag @me");
  EXPECT_EQ(s.url_count, 1u);
  EXPECT_EQ(s.hashtag_count, 0u);
  EXPECT_EQ(s.mention_count, 1u);
}

TEST(AuthorFeatures, SchemaShape) {
  const auto& schema = FeatureSchema::V1();
  ASSERT_EQ(schema.size(), static_cast<size_t>(kFeatureCountV1));
  EXPECT_EQ(schema.names[kAvgCharsPerTweet], "avg_chars_per_tweet");
  EXPECT_EQ(schema.names[kPunctQuestion], "question_per_sentence");
  EXPECT_EQ(schema.names[kElongationsPerTweet], "elongations_per_tweet");
}

TEST(AuthorFeatures, SingleTweetFixture) {
  FeatureVector v = ExtractAuthorFeatures(MakeAuthor({"Why?? #yes :) soooo"}));
  ASSERT_EQ(v.size(), 21u);
  EXPECT_EQ(v.values[kAvgCharsPerTweet], 19.0);
  EXPECT_EQ(v.values[kAvgTokensPerTweet], 4.0);
  EXPECT_EQ(v.values[kAvgCharsPerToken], 4.0);
  EXPECT_EQ(v.values[kAvgSentencesPerTweet], 2.0);
  EXPECT_EQ(v.values[kPunctQuestion], 1.0);
  EXPECT_EQ(v.values[kPunctColon], 0.5);
  EXPECT_EQ(v.values[kPunctRightParen], 0.5);
  EXPECT_EQ(v.values[kPunctPeriod], 0.0);
  EXPECT_EQ(v.values[kHashtagsPerTweet], 1.0);
  EXPECT_EQ(v.values[kElongationsPerTweet], 1.0);
  EXPECT_EQ(v.values[kUrlsPerTweet], 0.0);
}

TEST(AuthorFeatures, TwoTweetAverages) {
  FeatureVector v = ExtractAuthorFeatures(
      MakeAuthor({"Why?? #yes :) soooo", "Hi there. How are you?"}));
  EXPECT_EQ(v.values[kAvgCharsPerTweet], 20.5);
  EXPECT_EQ(v.values[kAvgTokensPerTweet], 4.5);
  EXPECT_DOUBLE_EQ(v.values[kAvgCharsPerToken], 3.8);
  EXPECT_EQ(v.values[kAvgSentencesPerTweet], 2.0);
  EXPECT_EQ(v.values[kPunctPeriod], 0.25);
  EXPECT_EQ(v.values[kPunctQuestion], 0.75);
  EXPECT_EQ(v.values[kPunctColon], 0.25);
  EXPECT_EQ(v.values[kPunctRightParen], 0.25);
  EXPECT_EQ(v.values[kHashtagsPerTweet], 0.5);
  EXPECT_EQ(v.values[kElongationsPerTweet], 0.5);
}

TEST(AuthorFeatures, EmptyTweetContributesZeros) {
  FeatureVector a = ExtractAuthorFeatures(MakeAuthor({"ok!", ""}));
  EXPECT_EQ(a.values[kAvgCharsPerTweet], 1.5);
  EXPECT_EQ(a.values[kPunctExclamation], 0.5);
  FeatureVector blank = ExtractAuthorFeatures(MakeAuthor({""}));
  for (double x : blank.values) EXPECT_EQ(x, 0.0);
}

TEST(AuthorFeatures, NoTweetsIsDataError) {
  EXPECT_THROW(ExtractAuthorFeatures(MakeAuthor({})), DataError);
}

TEST(AuthorFeatures, UnknownSchemaIsConfigError) {
  FeatureSchema future = FeatureSchema::V1();
  future.version = 2;
  EXPECT_THROW(ExtractAuthorFeatures(MakeAuthor({"x"}), future), ConfigError);
}

TEST(AuthorFeatures, CipherInvarianceOnFixtures) {
  for (const auto& f : HandScoredTweets()) {
    SCOPED_TRACE(f.text);
    std::string ciphered = Encipher(f.text);
    EXPECT_EQ(ComputeTweetStats(ciphered), ComputeTweetStats(f.text));
    EXPECT_EQ(ExtractAuthorFeatures(MakeAuthor({ciphered})),
              ExtractAuthorFeatures(MakeAuthor({f.text})));
  }
}

TEST(AuthorFeatures, CipherChangesLetters) {
  EXPECT_NE(Encipher("Hello"), "Hello");
  EXPECT_EQ(Encipher("https://t.co/Ab"), "https://t.co/Ab");
}

Corpus SmallSynth(uint64_t seed) {
  SynthConfig cfg;
  cfg.languages = {"aa", "bb"};
  cfg.authors_per_language = 10;
  cfg.tweets_per_author = 30;
  cfg.seed = seed;
  return SynthCorpus(cfg);
}

TEST(AuthorFeatures, PermutationAndDuplicationInvariant) {
  Corpus corpus = SmallSynth(3);
  for (uint64_t trial = 0; trial < 5; ++trial) {
    Author a = corpus[trial];
    FeatureVector base = ExtractAuthorFeatures(a);
    Author shuffled = a;
    Rng rng(trial);
    rng.Shuffle(std::span<std::string>(shuffled.tweets));
    EXPECT_EQ(ExtractAuthorFeatures(shuffled), base);
    Author doubled = a;
    doubled.tweets.insert(doubled.tweets.end(), a.tweets.begin(),
                          a.tweets.end());
    EXPECT_EQ(ExtractAuthorFeatures(doubled), base);
  }
}

TEST(AuthorFeatures, CipherInvariantOnSyntheticAuthors) {
  Corpus corpus = SmallSynth(4);
  for (size_t i = 0; i < 4; ++i) {
    Author ciphered = corpus[i];
    for (auto& t : ciphered.tweets) t = Encipher(t);
    EXPECT_EQ(ExtractAuthorFeatures(ciphered), ExtractAuthorFeatures(corpus[i]));
  }
}

TEST(AuthorFeatures, NonNegativeAndFinite) {
  FeatureMatrix m = ExtractCorpusFeatures(SmallSynth(5));
  for (const auto& row : m.rows) {
    ASSERT_EQ(row.features.size(), 21u);
    for (double x : row.features.values) {
      EXPECT_TRUE(std::isfinite(x));
      EXPECT_GE(x, 0.0);
    }
  }
}

TEST(CorpusFeatures, DeterministicAcrossThreads) {
  Corpus corpus = SmallSynth(6);
  FeatureMatrix here = ExtractCorpusFeatures(corpus);
  FeatureMatrix there;
  std::thread worker([&] { there = ExtractCorpusFeatures(corpus); });
  worker.join();
  EXPECT_EQ(here.rows, there.rows);
}

TEST(FeatureMatrixIo, RoundTripsExactly) {
  FeatureMatrix m = ExtractCorpusFeatures(SmallSynth(7));
  std::stringstream buf;
  WriteFeatureMatrix(m, buf);
  std::string text = buf.str();
  EXPECT_EQ(text.rfind("#stylo-features schema_version=1\n", 0), 0u);
  FeatureMatrix back = ReadFeatureMatrix(buf);
  EXPECT_EQ(back.schema.names, m.schema.names);
  EXPECT_EQ(back.rows, m.rows);
}

TEST(FeatureMatrixIo, RejectsBadHeader) {
  std::istringstream in("id\tlang\n");
  EXPECT_THROW(ReadFeatureMatrix(in), DataError);
}

}  // namespace
}  // namespace stylo
