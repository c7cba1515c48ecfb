#pragma once

// Palindromic tree (eertree): one node per distinct non-empty palindromic
// factor of the processed word, extended online one symbol at a time.
//
// The tree keeps its own copy of the processed symbols because every push
// compares against a symbol that lies one palindrome-length back. Feeding
// symbols straight from a generator avoids a second, caller-side copy of the
// word; it does not make memory independent of n.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "palrich/word.hpp"

namespace palrich {

struct richness_profile {
  std::uint64_t total = 0;
  std::map<std::size_t, std::uint64_t> by_length;

  friend bool operator==(const richness_profile&,
                         const richness_profile&) = default;
};

// Alphabets up to this size use a direct-address transition table.
inline constexpr std::size_t dense_transition_limit = 4;

template <class Index = std::uint32_t>
class basic_eertree {
  static_assert(std::is_unsigned_v<Index>);
  using length_type = std::make_signed_t<Index>;

 public:
  using index_type = Index;

  static constexpr Index imaginary_root = 0;  // length -1
  static constexpr Index empty_root = 1;      // length 0
  static constexpr Index none = std::numeric_limits<Index>::max();

  explicit basic_eertree(std::size_t alphabet_size) : k_(alphabet_size) {
    if (alphabet_size == 0) {
      throw std::invalid_argument("eertree alphabet size must be at least 1");
    }
    check_alphabet_size(alphabet_size);
    dense_ = k_ <= dense_transition_limit;
    clear();
  }

  void clear() {
    text_.clear();
    len_.assign({-1, 0});
    link_.assign({imaginary_root, imaginary_root});
    if (dense_) {
      dense_edges_.assign(2 * k_, none);
    } else {
      sparse_edges_.assign(2, {});
    }
    last_ = empty_root;
  }

  void reserve(std::size_t n) { text_.reserve(n); }

  // Appends one symbol; returns the number of new distinct palindromes (0 or 1).
  int push(symbol c) {
    if (c >= k_) {
      throw std::invalid_argument("symbol " + std::to_string(c) +
                                  " is outside [0, " + std::to_string(k_) + ")");
    }
    if (text_.size() >= static_cast<std::size_t>(
                            std::numeric_limits<length_type>::max()) - 2) {
      throw std::length_error("word too long for eertree index type");
    }
    text_.push_back(c);
    const std::size_t pos = text_.size() - 1;

    Index cur = find_extendable(last_, pos, c);
    Index existing = edge(cur, c);
    if (existing != none) {
      last_ = existing;
      return 0;
    }

    const length_type length = len_[cur] + 2;
    Index suffix = empty_root;
    if (length > 1) {
      suffix = edge(find_extendable(link_[cur], pos, c), c);
    }
    const auto node = static_cast<Index>(len_.size());
    len_.push_back(length);
    link_.push_back(suffix);
    if (dense_) {
      dense_edges_.resize(dense_edges_.size() + k_, none);
    } else {
      sparse_edges_.emplace_back();
    }
    set_edge(cur, c, node);
    last_ = node;
    return 1;
  }

  template <class Range>
  std::uint64_t push_all(const Range& symbols) {
    std::uint64_t added = 0;
    for (symbol s : symbols) added += static_cast<std::uint64_t>(push(s));
    return added;
  }

  // Number of distinct non-empty palindromic factors seen so far.
  std::uint64_t richness() const noexcept { return len_.size() - 2; }

  richness_profile histogram() const {
    richness_profile profile;
    for (std::size_t v = 2; v < len_.size(); ++v) {
      ++profile.by_length[static_cast<std::size_t>(len_[v])];
    }
    profile.total = richness();
    return profile;
  }

  // Counts indexed by length, 0 unused; avoids map overhead in hot loops.
  std::vector<std::uint64_t> length_counts() const {
    std::vector<std::uint64_t> counts;
    for (std::size_t v = 2; v < len_.size(); ++v) {
      auto l = static_cast<std::size_t>(len_[v]);
      if (counts.size() <= l) counts.resize(l + 1, 0);
      ++counts[l];
    }
    return counts;
  }

  std::size_t node_count() const noexcept { return len_.size(); }
  std::size_t size() const noexcept { return text_.size(); }
  std::size_t alphabet_size() const noexcept { return k_; }
  std::ptrdiff_t node_length(Index v) const { return len_.at(v); }
  Index suffix_link(Index v) const { return link_.at(v); }
  Index longest_suffix_palindrome() const noexcept { return last_; }
  Index transition(Index v, symbol c) const { return edge(v, c); }

 private:
  // Walks suffix links from v until text_[pos - len - 1] == c; the
  // imaginary root always matches.
  Index find_extendable(Index v, std::size_t pos, symbol c) const noexcept {
    for (;;) {
      const auto back = static_cast<std::ptrdiff_t>(pos) - 1 - len_[v];
      if (back >= 0 && text_[static_cast<std::size_t>(back)] == c) return v;
      if (v == imaginary_root) return v;
      v = link_[v];
    }
  }

  Index edge(Index v, symbol c) const noexcept {
    if (dense_) return dense_edges_[static_cast<std::size_t>(v) * k_ + c];
    const auto& edges = sparse_edges_[v];
    auto it = std::lower_bound(
        edges.begin(), edges.end(), c,
        [](const std::pair<symbol, Index>& e, symbol s) { return e.first < s; });
    return (it != edges.end() && it->first == c) ? it->second : none;
  }

  void set_edge(Index v, symbol c, Index target) {
    if (dense_) {
      dense_edges_[static_cast<std::size_t>(v) * k_ + c] = target;
      return;
    }
    auto& edges = sparse_edges_[v];
    auto it = std::lower_bound(
        edges.begin(), edges.end(), c,
        [](const std::pair<symbol, Index>& e, symbol s) { return e.first < s; });
    edges.insert(it, {c, target});
  }

  std::size_t k_;
  bool dense_ = true;
  std::vector<symbol> text_;
  std::vector<length_type> len_;
  std::vector<Index> link_;
  std::vector<Index> dense_edges_;
  std::vector<std::vector<std::pair<symbol, Index>>> sparse_edges_;
  Index last_ = empty_root;
};

using eertree = basic_eertree<std::uint32_t>;
using eertree64 = basic_eertree<std::uint64_t>;

// Picks 32-bit node indices below 2^31 symbols and 64-bit ones above.
inline constexpr std::size_t wide_index_threshold = std::size_t{1} << 31;

template <class Fn>
decltype(auto) with_eertree_for(std::size_t n, std::size_t k, Fn&& fn) {
  if (n < wide_index_threshold) {
    eertree tree(k);
    tree.reserve(n);
    return fn(tree);
  }
  eertree64 tree(k);
  tree.reserve(n);
  return fn(tree);
}

inline std::uint64_t richness(const word& w) {
  return with_eertree_for(w.size(), w.alphabet_size(), [&](auto& tree) {
    tree.push_all(w);
    return tree.richness();
  });
}

inline richness_profile richness_histogram(const word& w) {
  return with_eertree_for(w.size(), w.alphabet_size(), [&](auto& tree) {
    tree.push_all(w);
    return tree.histogram();
  });
}

}  // namespace palrich
