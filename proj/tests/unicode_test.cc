#include <gtest/gtest.h>

#include "stylo/unicode.h"

namespace stylo::unicode {
namespace {

TEST(Utf8, RoundTrip) {
  std::string text = "Ça va ♥ \U0001F600 ok";
  std::u32string decoded = Decode(text);
  EXPECT_EQ(decoded.size(), 12u);
  EXPECT_EQ(Encode(decoded), text);
}

TEST(Utf8, InvalidBytesBecomeReplacement) {
  std::u32string d = Decode("a\xff" "b\xc3");
  ASSERT_EQ(d.size(), 4u);
  EXPECT_EQ(d[1], U'�');
  EXPECT_EQ(d[3], U'�');
}

TEST(Classes, Letters) {
  EXPECT_TRUE(IsLetter(U'a'));
  EXPECT_TRUE(IsLetter(U'Ç'));
  EXPECT_TRUE(IsLetter(U'ж'));
  EXPECT_FALSE(IsLetter(U'×'));
  EXPECT_FALSE(IsLetter(U'7'));
  EXPECT_FALSE(IsLetter(U'#'));
}

TEST(Classes, EmojiAndDigits) {
  EXPECT_TRUE(IsEmoji(U'\U0001F600'));
  EXPECT_TRUE(IsEmoji(U'♥'));
  EXPECT_TRUE(IsEmoji(U'\U0001F680'));
  EXPECT_FALSE(IsEmoji(U'a'));
  EXPECT_TRUE(IsDecimalDigit(U'0'));
  EXPECT_FALSE(IsDecimalDigit(U'a'));
}

TEST(Classes, WhitespaceTrimAndQuotes) {
  EXPECT_TRUE(IsWhitespace(U' '));
  EXPECT_EQ(Trim(U"  x y \t"), U"x y");
  EXPECT_EQ(FoldQuote(U'’'), U'\'');
  EXPECT_EQ(FoldQuote(U'“'), U'"');
  EXPECT_EQ(FoldQuote(U'x'), U'x');
}

}  // namespace
}  // namespace stylo::unicode
