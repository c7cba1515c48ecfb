#include <gtest/gtest.h>

#include "palrich/word.hpp"

using namespace palrich;

TEST(Word, FromStringMapsAlphabetIndex) {
  auto w = word::from_string("acb", "abc");
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(w[0], 0);
  EXPECT_EQ(w[1], 2);
  EXPECT_EQ(w[2], 1);
  EXPECT_EQ(w.to_string("abc"), "acb");
}

TEST(Word, UnknownCharacterReportsPosition) {
  try {
    word::from_string("0102", "01");
    FAIL() << "expected invalid_symbol";
  } catch (const invalid_symbol& e) {
    EXPECT_EQ(e.position(), 3u);
  }
}

TEST(Word, RejectsOutOfRangeSymbols) {
  EXPECT_THROW(word({0, 2}, 2), std::invalid_argument);
  word w(2);
  EXPECT_THROW(w.push_back(5), std::invalid_argument);
  EXPECT_THROW(word(0), std::invalid_argument);
  EXPECT_THROW(word::from_string("a", "aa"), std::invalid_argument);
}

TEST(Word, PalindromePredicate) {
  EXPECT_TRUE(is_palindrome(word::from_string("", "ab").symbols()));
  EXPECT_TRUE(is_palindrome(word::from_string("abba", "ab").symbols()));
  EXPECT_TRUE(is_palindrome(word::from_string("aba", "ab").symbols()));
  EXPECT_FALSE(is_palindrome(word::from_string("abb", "ab").symbols()));
}

TEST(Word, Reversed) {
  EXPECT_EQ(word::from_string("aab", "ab").reversed(), word::from_string("baa", "ab"));
}
