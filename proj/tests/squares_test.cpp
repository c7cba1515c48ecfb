#include <gtest/gtest.h>

#include "oracles.hpp"
#include "palrich/squares.hpp"
#include "palrich/wordgen.hpp"

using namespace palrich;

namespace {
word bin(std::string_view s) { return word::from_string(s, "01"); }
}

TEST(Squares, SmallExamples) {
  EXPECT_EQ(oracle::squares_by_half_length(bin("0101")),
            (std::map<std::size_t, std::uint64_t>{{2, 1}}));
  EXPECT_EQ(distinct_squares_exact(bin("0101")).total, 1u);
  EXPECT_EQ(distinct_squares_exact(bin("00")).total, 1u);
  EXPECT_EQ(distinct_squares_exact(bin("01")).total, 0u);
  EXPECT_EQ(distinct_squares_exact(bin("")).total, 0u);
  auto capped = distinct_squares_capped(bin("000000"), 1);
  EXPECT_EQ(capped.total, 1u);
  EXPECT_EQ(capped.by_half_length, (std::map<std::size_t, std::uint64_t>{{1, 1}}));
  EXPECT_GT(capped.truncation_bound, 0.0);
}

TEST(Squares, ExactLimitAndCapValidation) {
  auto w = random_word(2, 50, seed{1, 2});
  EXPECT_THROW(distinct_squares_exact(w, 49), budget_exceeded);
  EXPECT_THROW(distinct_squares_capped(w, 0), std::invalid_argument);
}

TEST(Squares, ExhaustiveExactAndCappedMatchBruteForce) {
  for (std::size_t n = 0; n <= 12; ++n) {
    oracle::for_each_word(2, n, [&](const word& w) {
      const auto expected = oracle::squares_by_half_length(w);
      const auto exact = distinct_squares_exact(w);
      ASSERT_EQ(exact.by_half_length, expected);
      const auto capped = distinct_squares_capped(w, std::max<std::size_t>(1, n / 2));
      ASSERT_EQ(capped.by_half_length, exact.by_half_length);
      ASSERT_EQ(capped.total, exact.total);
      ASSERT_LE(exact.total, 2 * n);
    });
  }
}

TEST(Squares, CappedMatchesTruncatedBruteForce) {
  for (std::uint64_t t = 0; t < 50; ++t) {
    auto w = random_word(3, 150, seed{4, t});
    const std::size_t cap = 1 + t % 6;
    EXPECT_EQ(distinct_squares_capped(w, cap).by_half_length,
              oracle::squares_by_half_length(w, cap));
  }
}

TEST(Squares, CapNotBindingEqualsExactOnRandomWords) {
  for (std::uint64_t t = 0; t < 5; ++t) {
    auto w = random_word(2, 10000, seed{8, t});
    EXPECT_EQ(distinct_squares_capped(w, w.size() / 2), distinct_squares_exact(w));
  }
}

TEST(Squares, PermutationInvariance) {
  for (std::uint64_t t = 0; t < 50; ++t) {
    auto w = random_word(3, 400, seed{6, t});
    std::vector<symbol> mapped;
    for (symbol s : w) mapped.push_back(static_cast<symbol>((s + 1) % 3));
    EXPECT_EQ(distinct_squares_exact(w).total, distinct_squares_exact(word(mapped, 3)).total);
  }
}

TEST(Squares, HighlyRepetitiveWord) {
  // (01)^50: squares (01)^j (10)^j for |u| = 2j and 0101.. shifted; brute force decides
  std::vector<symbol> s;
  for (int i = 0; i < 100; ++i) s.push_back(static_cast<symbol>(i % 2));
  word w(s, 2);
  EXPECT_EQ(distinct_squares_exact(w).by_half_length, oracle::squares_by_half_length(w));
}

TEST(Squares, DefaultCapAndBounds) {
  EXPECT_EQ(default_square_cap(1u << 20, 2), 4 * 20 + 16u);
  EXPECT_LE(square_truncation_bound(1000000, 2, default_square_cap(1000000, 2)), 1e-12);
  EXPECT_DOUBLE_EQ(square_truncation_bound(10, 2, 5), 0.0);
  // envelope at n = 10: l = 1..5 with min(2^l, (11 - 2l) / 2^l) = 2, 1.75, 0.625, 0.1875, 0.03125
  EXPECT_NEAR(square_count_envelope(10, 2), 2 + 1.75 + 0.625 + 0.1875 + 0.03125, 1e-12);
}
