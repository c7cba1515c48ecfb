#pragma once

// Distinct square factors uu (u non-empty).
//
// For each half-length l a backward scan tracks the run of positions with
// w[i] == w[i+l]; a run of length >= l starting at i certifies the square
// w[i..i+2l-1] by direct comparison. Distinct halves of equal length are
// deduplicated by a pair of polynomial fingerprints, and every fingerprint
// hit is confirmed against the stored representative, so collisions only
// cost time.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "palrich/error.hpp"
#include "palrich/word.hpp"

namespace palrich {

struct square_profile {
  std::uint64_t total = 0;
  std::map<std::size_t, std::uint64_t> by_half_length;
  std::size_t max_half_length = 0;  // largest |u| examined
  // Union bound on the probability that a uniform random word of this length
  // has a square longer than the cap; 0 when the cap is not binding.
  double truncation_bound = 0.0;

  friend bool operator==(const square_profile&, const square_profile&) = default;
};

inline constexpr std::size_t default_exact_square_limit = 100000;

namespace detail {

inline constexpr std::uint64_t mersenne61 = (std::uint64_t{1} << 61) - 1;
inline constexpr std::uint64_t prime_b = 0x3fffffffffffffc7ULL;  // 2^62 - 57

inline std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

class fingerprint_table {
 public:
  fingerprint_table(std::span<const symbol> s, std::uint64_t base,
                    std::uint64_t modulus)
      : p_(modulus), prefix_(s.size() + 1, 0), power_(s.size() + 1, 1) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      prefix_[i + 1] = (mod_mul(prefix_[i], base, p_) + s[i] + 1) % p_;
      power_[i + 1] = mod_mul(power_[i], base, p_);
    }
  }

  // Fingerprint of s[i .. i+len-1].
  std::uint64_t of(std::size_t i, std::size_t len) const {
    std::uint64_t sub = mod_mul(prefix_[i], power_[len], p_);
    return (prefix_[i + len] + p_ - sub) % p_;
  }

 private:
  std::uint64_t p_;
  std::vector<std::uint64_t> prefix_;
  std::vector<std::uint64_t> power_;
};

struct pair_hash {
  std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& p) const noexcept {
    return static_cast<std::size_t>(p.first * 0x9e3779b97f4a7c15ULL ^ p.second);
  }
};

inline square_profile count_squares(const word& w, std::size_t max_half) {
  const auto s = w.symbols();
  const std::size_t n = s.size();
  square_profile profile;
  profile.max_half_length = std::min(max_half, n / 2);
  if (profile.max_half_length == 0) return profile;

  fingerprint_table fa(s, 1000003, mersenne61);
  fingerprint_table fb(s, 911382323, prime_b);

  using key = std::pair<std::uint64_t, std::uint64_t>;
  std::unordered_map<key, std::vector<std::size_t>, pair_hash> seen;

  for (std::size_t l = 1; l <= profile.max_half_length; ++l) {
    seen.clear();
    std::uint64_t distinct = 0;
    std::size_t run = 0;
    for (std::size_t i = n - l; i-- > 0;) {
      run = (s[i] == s[i + l]) ? run + 1 : 0;
      if (run < l) continue;
      auto& reps = seen[key{fa.of(i, l), fb.of(i, l)}];
      const bool duplicate = std::any_of(reps.begin(), reps.end(), [&](std::size_t r) {
        return std::equal(s.begin() + i, s.begin() + i + l, s.begin() + r);
      });
      if (!duplicate) {
        reps.push_back(i);
        ++distinct;
      }
    }
    if (distinct != 0) {
      profile.by_half_length[l] = distinct;
      profile.total += distinct;
    }
  }
  return profile;
}

}  // namespace detail

// Sum over l > cap of P(some square with |u| = l) <= (n - 2l + 1) k^-l,
// for a uniform random k-ary word of length n.
inline double square_truncation_bound(std::size_t n, std::size_t k, std::size_t cap) {
  double bound = 0.0;
  const double kk = static_cast<double>(k);
  for (std::size_t l = cap + 1; 2 * l <= n; ++l) {
    double term = static_cast<double>(n - 2 * l + 1) * std::pow(kk, -static_cast<double>(l));
    bound += term;
    if (term < 1e-300) break;
  }
  return std::min(bound, 1.0);
}

// Default half-length cap for random-word experiments: ceil(4 log_k n) + 16.
inline std::size_t default_square_cap(std::size_t n, std::size_t k) {
  if (n < 2) return 1;
  const double lg = std::log(static_cast<double>(n)) / std::log(static_cast<double>(k));
  return static_cast<std::size_t>(std::ceil(4.0 * lg)) + 16;
}

// Envelope sum_l min(k^l, (n - 2l + 1) / k^l): neither the number of distinct
// squares with |u| = l nor their expected occurrence count can exceed it.
inline double square_count_envelope(std::size_t n, std::size_t k) {
  double total = 0.0;
  const double kk = static_cast<double>(k);
  for (std::size_t l = 1; 2 * l <= n; ++l) {
    const double cap = std::pow(kk, static_cast<double>(l));
    const double occ = static_cast<double>(n - 2 * l + 1) / cap;
    total += std::min(cap, occ);
    if (occ < 1e-18) break;
  }
  return total;
}

inline square_profile distinct_squares_exact(
    const word& w, std::size_t exact_limit = default_exact_square_limit) {
  if (w.size() > exact_limit) {
    throw budget_exceeded("word length " + std::to_string(w.size()) +
                          " exceeds the exact-mode limit " +
                          std::to_string(exact_limit) +
                          "; use capped mode for long random words");
  }
  return detail::count_squares(w, w.size() / 2);
}

inline square_profile distinct_squares_capped(const word& w, std::size_t max_half_length) {
  if (max_half_length < 1) throw std::invalid_argument("square cap must be >= 1");
  auto profile = detail::count_squares(w, max_half_length);
  if (max_half_length < w.size() / 2) {
    profile.truncation_bound =
        square_truncation_bound(w.size(), w.alphabet_size(), max_half_length);
  }
  return profile;
}

}  // namespace palrich
