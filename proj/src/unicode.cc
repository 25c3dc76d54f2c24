#include "stylo/unicode.h"

#include <algorithm>
#include <array>
#include <span>
#include <utility>

namespace stylo::unicode {
namespace {

constexpr char32_t kReplacement = 0xFFFD;

struct Range {
  char32_t lo;
  char32_t hi;
};

constexpr bool InRanges(char32_t c, std::span<const Range> ranges) {
  for (const auto& r : ranges) {
    if (c >= r.lo && c <= r.hi) return true;
  }
  return false;
}

constexpr std::array kLetterRanges{
    Range{U'A', U'Z'},       Range{U'a', U'z'},
    Range{0x00AA, 0x00AA},   Range{0x00B5, 0x00B5},
    Range{0x00BA, 0x00BA},   Range{0x00C0, 0x00D6},
    Range{0x00D8, 0x00F6},   Range{0x00F8, 0x024F},  // Latin-1, Latin Ext-A/B
    Range{0x0250, 0x02AF},                           // IPA
    Range{0x0370, 0x03FF},                           // Greek
    Range{0x0400, 0x052F},                           // Cyrillic
    Range{0x0531, 0x0587},                           // Armenian
    Range{0x05D0, 0x05EA},                           // Hebrew
    Range{0x0620, 0x064A},   Range{0x0671, 0x06D3},  // Arabic
    Range{0x0900, 0x0939},   Range{0x0E01, 0x0E30},  // Devanagari, Thai
    Range{0x10A0, 0x10FF},                           // Georgian
    Range{0x1E00, 0x1FFF},                           // Latin Ext Additional, Greek Ext
    Range{0x3040, 0x30FF},                           // Hiragana, Katakana
    Range{0x3400, 0x4DBF},   Range{0x4E00, 0x9FFF},  // CJK
    Range{0xAC00, 0xD7A3},                           // Hangul
};

constexpr std::array kDigitRanges{
    Range{U'0', U'9'},     Range{0x0660, 0x0669}, Range{0x06F0, 0x06F9},
    Range{0x0966, 0x096F}, Range{0xFF10, 0xFF19},
};

constexpr std::array kEmojiRanges{
    Range{0x1F300, 0x1F5FF},  // Misc Symbols and Pictographs
    Range{0x1F600, 0x1F64F},  // Emoticons
    Range{0x1F680, 0x1F6FF},  // Transport and Map
    Range{0x1F900, 0x1F9FF},  // Supplemental Symbols and Pictographs
    Range{0x2665, 0x2665},    // black heart suit
    Range{0x263A, 0x263A},    // white smiling face
};

}  // namespace

std::u32string Decode(std::string_view utf8) {
  std::u32string out;
  out.reserve(utf8.size());
  size_t i = 0;
  const size_t n = utf8.size();
  while (i < n) {
    const auto b0 = static_cast<unsigned char>(utf8[i]);
    int len;
    char32_t c;
    if (b0 < 0x80) {
      out.push_back(b0);
      ++i;
      continue;
    } else if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      c = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      c = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      c = b0 & 0x07;
    } else {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    if (i + len > n) {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    bool ok = true;
    for (int k = 1; k < len; ++k) {
      const auto b = static_cast<unsigned char>(utf8[i + k]);
      if ((b & 0xC0) != 0x80) {
        ok = false;
        break;
      }
      c = (c << 6) | (b & 0x3F);
    }
    static constexpr char32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
    if (!ok || c < kMin[len] || c > 0x10FFFF || (c >= 0xD800 && c <= 0xDFFF)) {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    out.push_back(c);
    i += len;
  }
  return out;
}

void AppendUtf8(char32_t c, std::string& out) {
  if (c < 0x80) {
    out.push_back(static_cast<char>(c));
  } else if (c < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (c >> 6)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else if (c < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (c >> 12)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (c >> 18)));
    out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  }
}

std::string Encode(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t c : text) AppendUtf8(c, out);
  return out;
}

bool IsWhitespace(char32_t c) {
  switch (c) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return c >= 0x2000 && c <= 0x200A;
  }
}

bool IsLetter(char32_t c) {
  if (c == 0x00D7 || c == 0x00F7) return false;  // multiplication, division
  return InRanges(c, kLetterRanges);
}

bool IsDecimalDigit(char32_t c) { return InRanges(c, kDigitRanges); }

bool IsEmoji(char32_t c) { return InRanges(c, kEmojiRanges); }

char32_t FoldQuote(char32_t c) {
  switch (c) {
    case 0x2018:
    case 0x2019:
      return U'\'';
    case 0x201C:
    case 0x201D:
      return U'"';
    default:
      return c;
  }
}

std::u32string_view Trim(std::u32string_view text) {
  size_t b = 0;
  size_t e = text.size();
  while (b < e && IsWhitespace(text[b])) ++b;
  while (e > b && IsWhitespace(text[e - 1])) --e;
  return text.substr(b, e - b);
}

}  // namespace stylo::unicode
