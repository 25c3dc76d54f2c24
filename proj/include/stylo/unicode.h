#ifndef STYLO_UNICODE_H_
#define STYLO_UNICODE_H_

#include <string>
#include <string_view>
#include <vector>

namespace stylo::unicode {

// Decodes UTF-8 into scalar values. Invalid sequences decode to U+FFFD, one
// replacement per offending byte.
std::u32string Decode(std::string_view utf8);
std::string Encode(std::u32string_view text);
void AppendUtf8(char32_t c, std::string& out);

bool IsWhitespace(char32_t c);
// Alphabetic scripts by block range; no locale or ICU involved.
bool IsLetter(char32_t c);
bool IsDecimalDigit(char32_t c);
// Emoticons, Misc Symbols & Pictographs, Transport & Map, Supplemental
// Symbols & Pictographs, plus U+2665 and U+263A.
bool IsEmoji(char32_t c);

// U+2018/U+2019 -> ', U+201C/U+201D -> ". Everything else unchanged.
char32_t FoldQuote(char32_t c);

// Strips leading/trailing whitespace.
std::u32string_view Trim(std::u32string_view text);

}  // namespace stylo::unicode

#endif  // STYLO_UNICODE_H_
