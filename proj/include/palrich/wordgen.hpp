#pragma once

// Seedable generation of uniform random words, uniform random palindromes,
// and words of prescribed palindromic richness.
//
// Output is bit-identical across platforms: std::mt19937_64 is fully
// specified by the standard, and symbol draws use our own bounded-integer
// reduction rather than the implementation-defined std distributions.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include "palrich/word.hpp"

namespace palrich {

// Trial t of an experiment with master seed s uses seed{s, t}.
struct seed {
  std::uint64_t master = 0;
  std::uint64_t stream = 0;
};

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Pure function of (master, stream); neighbouring streams decorrelate.
inline constexpr std::uint64_t mix_seed(seed s) noexcept {
  return splitmix64(splitmix64(s.master) ^ splitmix64(~s.stream));
}

// Uniform symbols on [0, k). Power-of-two alphabets consume log2(k) bits per
// symbol from each 64-bit draw; other sizes use Lemire's multiply-shift
// reduction with rejection.
class symbol_source {
 public:
  symbol_source(std::size_t k, seed s) : k_(k), engine_(mix_seed(s)) {
    if (k < 1 || k > max_alphabet_size) {
      throw std::invalid_argument("symbol_source alphabet size out of range");
    }
    if (std::has_single_bit(k)) {
      bits_ = static_cast<unsigned>(std::countr_zero(k));
      mask_ = k - 1;
    }
  }

  symbol next() {
    if (bits_ != 0) {
      if (available_ < bits_) {
        buffer_ = engine_();
        available_ = 64;
      }
      auto out = static_cast<symbol>(buffer_ & mask_);
      buffer_ >>= bits_;
      available_ -= bits_;
      return out;
    }
    if (k_ == 1) return 0;
    return static_cast<symbol>(bounded(k_));
  }

  std::size_t alphabet_size() const noexcept { return k_; }

 private:
  std::uint64_t bounded(std::uint64_t range) {
    unsigned __int128 product =
        static_cast<unsigned __int128>(engine_()) * range;
    auto low = static_cast<std::uint64_t>(product);
    if (low < range) {
      const std::uint64_t threshold = (0 - range) % range;
      while (low < threshold) {
        product = static_cast<unsigned __int128>(engine_()) * range;
        low = static_cast<std::uint64_t>(product);
      }
    }
    return static_cast<std::uint64_t>(product >> 64);
  }

  std::size_t k_;
  std::mt19937_64 engine_;
  unsigned bits_ = 0;
  std::uint64_t mask_ = 0;
  std::uint64_t buffer_ = 0;
  unsigned available_ = 0;
};

inline word random_word(std::size_t k, std::size_t n, seed s) {
  if (k < 2) throw std::invalid_argument("random_word requires k >= 2");
  symbol_source source(k, s);
  std::vector<symbol> symbols(n);
  for (auto& x : symbols) x = source.next();
  return word(std::move(symbols), k);
}

// Uniform over the k^ceil(m/2) palindromes of length m.
inline word random_palindrome(std::size_t k, std::size_t m, seed s) {
  if (m == 0) throw std::invalid_argument("random_palindrome requires m >= 1");
  if (k < 1) throw std::invalid_argument("random_palindrome requires k >= 1");
  symbol_source source(k, s);
  std::vector<symbol> symbols(m);
  const std::size_t half = (m + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) symbols[i] = source.next();
  for (std::size_t i = half; i < m; ++i) symbols[i] = symbols[m - 1 - i];
  return word(std::move(symbols), k);
}

// Smallest and largest richness rich_construction accepts for (k, n).
struct richness_range {
  std::size_t low;
  std::size_t high;
};

inline richness_range constructible_richness(std::size_t k, std::size_t n) {
  return {k == 2 ? std::size_t{8} : k, n};
}

// A word of length n over k letters with exactly l distinct palindromes.
//   k > 2:  a^(l-k) . prefix of (a_1 a_2 ... a_k)^omega
//   k = 2:  0^(l-8) . prefix of (001101)^omega, which alone has 8 palindromes;
//           l = n uses 0^n.
inline word rich_construction(std::size_t k, std::size_t n, std::size_t l) {
  if (k < 2) throw std::invalid_argument("rich_construction requires k >= 2");
  check_alphabet_size(k);
  const auto range = constructible_richness(k, n);
  const bool unary = (l == n && n >= 1);
  if (!unary && (l < range.low || l > range.high)) {
    throw std::invalid_argument(
        "richness " + std::to_string(l) + " not constructible for k=" +
        std::to_string(k) + ", n=" + std::to_string(n) + "; valid range is [" +
        std::to_string(range.low) + ", " + std::to_string(range.high) + "]");
  }
  std::vector<symbol> symbols;
  symbols.reserve(n);
  if (unary) {
    symbols.assign(n, 0);
  } else if (k == 2) {
    static constexpr symbol period[] = {0, 0, 1, 1, 0, 1};
    symbols.assign(l - 8, 0);
    for (std::size_t i = 0; symbols.size() < n; ++i) symbols.push_back(period[i % 6]);
  } else {
    symbols.assign(l - k, 0);
    for (std::size_t i = 0; symbols.size() < n; ++i) {
      symbols.push_back(static_cast<symbol>(i % k));
    }
  }
  return word(std::move(symbols), k);
}

}  // namespace palrich
