#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "palrich/error.hpp"

namespace palrich {

using symbol = std::uint8_t;

// Symbols are stored in one byte; analytic code accepts larger k.
inline constexpr std::size_t max_alphabet_size = 256;

inline void check_alphabet_size(std::size_t k) {
  if (k == 0 || k > max_alphabet_size) {
    throw std::invalid_argument("alphabet size must be in [1, " +
                                std::to_string(max_alphabet_size) + "], got " +
                                std::to_string(k));
  }
}

// A finite sequence of symbol ids over an alphabet of size k.
class word {
 public:
  explicit word(std::size_t alphabet_size) : k_(alphabet_size) {
    check_alphabet_size(k_);
  }

  word(std::vector<symbol> symbols, std::size_t alphabet_size)
      : symbols_(std::move(symbols)), k_(alphabet_size) {
    check_alphabet_size(k_);
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      if (symbols_[i] >= k_) {
        throw std::invalid_argument("symbol " + std::to_string(symbols_[i]) +
                                    " at position " + std::to_string(i) +
                                    " is outside [0, " + std::to_string(k_) +
                                    ")");
      }
    }
  }

  word(std::initializer_list<symbol> symbols, std::size_t alphabet_size)
      : word(std::vector<symbol>(symbols), alphabet_size) {}

  // Symbol id of a character is its index in `alphabet`.
  static word from_string(std::string_view text, std::string_view alphabet) {
    if (alphabet.empty()) throw std::invalid_argument("empty alphabet");
    check_alphabet_size(alphabet.size());
    std::array<int, 256> index{};
    index.fill(-1);
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
      auto ch = static_cast<unsigned char>(alphabet[i]);
      if (index[ch] != -1) {
        throw std::invalid_argument("alphabet contains a repeated character");
      }
      index[ch] = static_cast<int>(i);
    }
    std::vector<symbol> symbols;
    symbols.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
      int id = index[static_cast<unsigned char>(text[i])];
      if (id < 0) throw invalid_symbol(i, text[i]);
      symbols.push_back(static_cast<symbol>(id));
    }
    word w(alphabet.size());
    w.symbols_ = std::move(symbols);
    return w;
  }

  std::string to_string(std::string_view alphabet) const {
    if (alphabet.size() < k_) {
      throw std::invalid_argument("alphabet string shorter than alphabet size");
    }
    std::string out;
    out.reserve(symbols_.size());
    for (symbol s : symbols_) out.push_back(alphabet[s]);
    return out;
  }

  void push_back(symbol s) {
    if (s >= k_) {
      throw std::invalid_argument("symbol " + std::to_string(s) +
                                  " is outside [0, " + std::to_string(k_) + ")");
    }
    symbols_.push_back(s);
  }

  void reserve(std::size_t n) { symbols_.reserve(n); }

  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  std::size_t alphabet_size() const noexcept { return k_; }

  symbol operator[](std::size_t i) const noexcept { return symbols_[i]; }
  std::span<const symbol> symbols() const noexcept { return symbols_; }
  auto begin() const noexcept { return symbols_.begin(); }
  auto end() const noexcept { return symbols_.end(); }

  word reversed() const {
    word r = *this;
    std::reverse(r.symbols_.begin(), r.symbols_.end());
    return r;
  }

  friend bool operator==(const word& a, const word& b) = default;

 private:
  std::vector<symbol> symbols_;
  std::size_t k_;
};

inline bool is_palindrome(std::span<const symbol> s) {
  return std::equal(s.begin(), s.begin() + s.size() / 2, s.rbegin());
}

}  // namespace palrich
