#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>

#include "stylo/corpus.h"
#include "stylo/error.h"
#include "stylo/random.h"
#include "stylo/unicode.h"

namespace stylo {

void SynthConfig::Validate() const {
  if (languages.empty()) throw ConfigError("synth: at least one language");
  std::set<std::string> seen;
  for (const auto& lang : languages) {
    if (!IsValidLanguageCode(lang)) {
      throw ConfigError("synth: invalid language code '" + lang + "'");
    }
    if (!seen.insert(lang).second) {
      throw ConfigError("synth: duplicate language '" + lang + "'");
    }
  }
  if (authors_per_language < 2 || authors_per_language % 2 != 0) {
    throw ConfigError(
        "synth: authors_per_language must be even and at least 2");
  }
  if (tweets_per_author < 1) throw ConfigError("synth: tweets_per_author >= 1");
  if (!(signal_strength >= 0.0) || !std::isfinite(signal_strength)) {
    throw ConfigError("synth: signal_strength must be finite and >= 0");
  }
}

namespace {

constexpr std::string_view kConsonants = "bcdfghjklmnprstvwz";
constexpr std::string_view kVowels = "aeiou";
constexpr size_t kLexiconPairs = 150;

constexpr char32_t kEmoji[] = {0x1F600, 0x1F602, 0x1F60D, 0x1F622, 0x1F389,
                               0x1F525, 0x1F44D, 0x1F680, 0x1F914, 0x2665,
                               0x263A};
constexpr std::string_view kEmoticons[] = {":)", ":(", ";)", ":-)", ":D",
                                           ":-(", ":P"};

// Words of CV syllables; no letter can repeat three times in a row.
std::string MakeWord(Rng& rng, size_t syllables) {
  std::string w;
  for (size_t s = 0; s < syllables; ++s) {
    w.push_back(kConsonants[rng.Below(kConsonants.size())]);
    w.push_back(kVowels[rng.Below(kVowels.size())]);
  }
  return w;
}

// Language lexicon in two halves of equal size whose k-th words have the
// same length, so picking from either half leaves length statistics alone.
struct Lexicon {
  std::vector<std::string> female;
  std::vector<std::string> male;
};

std::vector<Lexicon> BuildLexicons(const SynthConfig& cfg) {
  std::set<std::string> taken;
  std::vector<Lexicon> out;
  std::vector<std::string> order = cfg.languages;
  std::sort(order.begin(), order.end());
  std::vector<std::pair<std::string, Lexicon>> built;
  for (const auto& lang : order) {
    Rng rng(DeriveSeed(cfg.seed, "synth/lexicon/" + lang));
    Lexicon lex;
    const auto fresh = [&](size_t syllables) {
      while (true) {
        std::string w = MakeWord(rng, syllables);
        if (taken.insert(w).second) return w;
      }
    };
    for (size_t k = 0; k < kLexiconPairs; ++k) {
      const size_t syllables = 2 + rng.Below(3);
      lex.female.push_back(fresh(syllables));
      lex.male.push_back(fresh(syllables));
    }
    built.emplace_back(lang, std::move(lex));
  }
  for (const auto& lang : cfg.languages) {
    for (auto& [code, lex] : built) {
      if (code == lang) out.push_back(lex);
    }
  }
  return out;
}

double Clamp(double v, double lo, double hi) { return std::min(hi, std::max(lo, v)); }

// Author-level style. Latent normals are drawn in a fixed order before any
// signal is applied, so the same seed gives the same latents at every
// signal strength.
struct Style {
  // Gender-linked.
  double words_per_sentence;
  double question_rate;
  double hashtag_rate;
  // Gender-neutral.
  double extra_sentences;
  double exclamation_rate;
  double ellipsis_rate;
  double comma_rate;
  double emoticon_rate;
  double mention_rate;
  double url_rate;
  double number_rate;
  double emoji_rate;
  double elongation_rate;
  double apostrophe_rate;
  double hyphen_rate;
  double quote_rate;
  double paren_rate;
  double colon_rate;
  double double_terminal_rate;
};

Style DrawStyle(Rng& rng, double shift) {
  double z[19];
  for (double& v : z) v = rng.Normal();
  Style s;
  s.words_per_sentence = Clamp(7.0 + 1.5 * (z[0] + shift), 2.0, 25.0);
  s.question_rate = Clamp(0.25 + 0.06 * (z[1] + shift), 0.005, 0.9);
  s.hashtag_rate = Clamp(0.8 + 0.2 * (z[2] + shift), 0.01, 5.0);
  s.extra_sentences = Clamp(0.8 + 0.15 * z[3], 0.05, 3.0);
  s.exclamation_rate = Clamp(0.15 + 0.05 * z[4], 0.0, 0.5);
  s.ellipsis_rate = Clamp(0.04 + 0.02 * z[5], 0.0, 0.2);
  s.comma_rate = Clamp(0.5 + 0.15 * z[6], 0.0, 3.0);
  s.emoticon_rate = Clamp(0.25 + 0.1 * z[7], 0.0, 2.0);
  s.mention_rate = Clamp(0.4 + 0.15 * z[8], 0.0, 3.0);
  s.url_rate = Clamp(0.2 + 0.08 * z[9], 0.0, 2.0);
  s.number_rate = Clamp(0.3 + 0.1 * z[10], 0.0, 2.0);
  s.emoji_rate = Clamp(0.3 + 0.12 * z[11], 0.0, 3.0);
  s.elongation_rate = Clamp(0.03 + 0.01 * z[12], 0.0, 0.2);
  s.apostrophe_rate = Clamp(0.03 + 0.01 * z[13], 0.0, 0.2);
  s.hyphen_rate = Clamp(0.02 + 0.01 * z[14], 0.0, 0.2);
  s.quote_rate = Clamp(0.02 + 0.01 * z[15], 0.0, 0.2);
  s.paren_rate = Clamp(0.015 + 0.007 * z[16], 0.0, 0.2);
  s.colon_rate = Clamp(0.05 + 0.02 * z[17], 0.0, 0.5);
  s.double_terminal_rate = Clamp(0.1 + 0.05 * z[18], 0.0, 0.6);
  return s;
}

class TweetWriter {
 public:
  TweetWriter(Rng& rng, const Lexicon& lex, const Style& style,
              double female_word_share)
      : rng_(rng), lex_(lex), style_(style), female_share_(female_word_share) {}

  std::string Tweet() {
    out_.clear();
    // Extras go first so they never open a sentence of their own.
    for (int k = rng_.Poisson(style_.mention_rate); k > 0; --k) Emit("@" + Word());
    for (int k = rng_.Poisson(style_.hashtag_rate); k > 0; --k) Emit("#" + Word());
    for (int k = rng_.Poisson(style_.url_rate); k > 0; --k) Emit(Url());
    for (int k = rng_.Poisson(style_.emoji_rate); k > 0; --k) {
      std::string e;
      unicode::AppendUtf8(kEmoji[rng_.Below(std::size(kEmoji))], e);
      Emit(e);
    }
    const int sentences = 1 + rng_.Poisson(style_.extra_sentences);
    for (int s = 0; s < sentences; ++s) Sentence(s + 1 == sentences);
    return out_;
  }

 private:
  void Emit(std::string_view token) {
    if (!out_.empty()) out_.push_back(' ');
    out_.append(token);
  }

  std::string Word() {
    const auto& half = rng_.Bernoulli(female_share_) ? lex_.female : lex_.male;
    return half[rng_.Below(half.size())];
  }

  std::string Url() {
    std::string u = "https://t.co/";
    for (int i = 0; i < 8; ++i) {
      u.push_back(rng_.Bernoulli(0.3) ? static_cast<char>('0' + rng_.Below(10))
                                      : kConsonants[rng_.Below(kConsonants.size())]);
    }
    return u;
  }

  void Sentence(bool last) {
    const int words = 1 + rng_.Poisson(style_.words_per_sentence - 1.0);
    for (int w = 0; w < words; ++w) {
      std::string word = Word();
      if (rng_.Bernoulli(style_.elongation_rate)) {
        const char v = word.back();
        word.append(2 + rng_.Below(3), v);
      }
      if (rng_.Bernoulli(style_.apostrophe_rate)) word.insert(1, "'");
      if (rng_.Bernoulli(style_.hyphen_rate)) word += "-" + Word();
      if (rng_.Bernoulli(style_.quote_rate)) word = "\"" + word + "\"";
      if (rng_.Bernoulli(style_.paren_rate)) word = "(" + word + ")";
      if (w + 1 < words) {
        if (rng_.Bernoulli(style_.comma_rate / style_.words_per_sentence)) {
          word.push_back(',');
        } else if (rng_.Bernoulli(style_.colon_rate / style_.words_per_sentence)) {
          word.push_back(rng_.Bernoulli(0.5) ? ':' : ';');
        }
      }
      Emit(word);
      if (rng_.Bernoulli(style_.number_rate / style_.words_per_sentence)) {
        Emit(std::to_string(rng_.Below(3000)));
      }
      if (rng_.Bernoulli(style_.emoticon_rate / style_.words_per_sentence)) {
        Emit(kEmoticons[rng_.Below(std::size(kEmoticons))]);
      }
    }
    if (last && rng_.Bernoulli(0.15)) return;
    std::string terminal;
    const double u = rng_.Uniform();
    if (u < style_.question_rate) {
      terminal = "?";
    } else if (u < style_.question_rate + style_.exclamation_rate) {
      terminal = "!";
    } else if (u < style_.question_rate + style_.exclamation_rate +
                       style_.ellipsis_rate) {
      terminal = "\xE2\x80\xA6";  // U+2026
    } else {
      terminal = ".";
    }
    if (terminal != "." && rng_.Bernoulli(style_.double_terminal_rate)) {
      terminal += terminal;
    }
    out_.append(terminal);
  }

  Rng& rng_;
  const Lexicon& lex_;
  const Style& style_;
  double female_share_;
  std::string out_;
};

}  // namespace

Corpus SynthCorpus(const SynthConfig& config) {
  config.Validate();
  const auto lexicons = BuildLexicons(config);
  const double surface = config.vocabulary_signal ? 0.0 : config.signal_strength;
  std::vector<Author> authors;
  authors.reserve(config.languages.size() * config.authors_per_language);

  for (size_t li = 0; li < config.languages.size(); ++li) {
    const std::string& lang = config.languages[li];
    const size_t n = config.authors_per_language;
    std::vector<Gender> genders(n, Gender::kMale);
    std::fill(genders.begin(), genders.begin() + static_cast<std::ptrdiff_t>(n / 2),
              Gender::kFemale);
    Rng gender_rng(DeriveSeed(config.seed, "synth/gender/" + lang));
    gender_rng.Shuffle(std::span(genders));

    for (size_t i = 0; i < n; ++i) {
      char id[64];
      std::snprintf(id, sizeof(id), "%s_%05zu", lang.c_str(), i);
      Rng rng(DeriveSeed(config.seed, std::string("synth/author/") + id));
      const bool female = genders[i] == Gender::kFemale;
      const Style style = DrawStyle(rng, (female ? 0.5 : -0.5) * surface);
      double female_share = 0.5;
      if (config.vocabulary_signal) female_share = female ? 0.9 : 0.1;
      TweetWriter writer(rng, lexicons[li], style, female_share);

      Author a;
      a.id = id;
      a.language = lang;
      a.gender = genders[i];
      a.tweets.reserve(config.tweets_per_author);
      for (size_t t = 0; t < config.tweets_per_author; ++t) {
        a.tweets.push_back(writer.Tweet());
      }
      authors.push_back(std::move(a));
    }
  }
  return Corpus(std::move(authors));
}

}  // namespace stylo
