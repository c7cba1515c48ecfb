#pragma once

// Border arrays, border polynomials, and the number A_w(n) of k-ary words
// of length n that avoid a fixed factor w, both exactly and through the
// growth rate theta_w and leading coefficient C_w of A_w(n) ~ C_w theta_w^n.
//
// Border convention: w is a border of itself, so border_array[0] == 1 always.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "palrich/bigint.hpp"
#include "palrich/error.hpp"
#include "palrich/word.hpp"

namespace palrich {

// Prefix function: pi[i] = length of the longest proper border of w[0..i].
inline std::vector<std::size_t> prefix_function(std::span<const symbol> s) {
  std::vector<std::size_t> pi(s.size(), 0);
  for (std::size_t i = 1; i < s.size(); ++i) {
    std::size_t j = pi[i - 1];
    while (j > 0 && s[i] != s[j]) j = pi[j - 1];
    if (s[i] == s[j]) ++j;
    pi[i] = j;
  }
  return pi;
}

class border_profile {
 public:
  explicit border_profile(word w) : word_(std::move(w)) {
    const std::size_t m = word_.size();
    if (m == 0) throw std::invalid_argument("border array of the empty word");
    bits_.assign(m, 0);
    bits_[0] = 1;
    const auto pi = prefix_function(word_.symbols());
    for (std::size_t b = pi[m - 1]; b > 0; b = pi[b - 1]) bits_[m - b] = 1;
  }

  const word& source() const noexcept { return word_; }
  std::size_t size() const noexcept { return bits_.size(); }

  // bits()[i] == 1 iff w has a border of length m - i (0-based i).
  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

  // Coefficient of x^j in f_w.
  int coefficient(std::size_t j) const { return bits_[bits_.size() - 1 - j]; }

  std::size_t longest_proper_border() const noexcept {
    for (std::size_t i = 1; i < bits_.size(); ++i) {
      if (bits_[i]) return bits_.size() - i;
    }
    return 0;
  }

  std::string to_string() const {
    std::string out;
    for (auto b : bits_) out.push_back(b ? '1' : '0');
    return out;
  }

  template <class Real>
  Real value(Real x) const {
    Real acc = 0;
    for (auto b : bits_) acc = acc * x + static_cast<Real>(b);
    return acc;
  }

  template <class Real>
  Real derivative(Real x) const {
    Real acc = 0;
    const std::size_t m = bits_.size();
    for (std::size_t i = 0; i + 1 < m; ++i) {
      acc = acc * x + static_cast<Real>(bits_[i]) * static_cast<Real>(m - 1 - i);
    }
    return acc;
  }

  // f_w(k) computed exactly; the border array read as a base-k numeral.
  big_int value_exact(std::uint64_t k) const {
    big_int acc = 0;
    for (auto b : bits_) acc = acc * k + b;
    return acc;
  }

 private:
  word word_;
  std::vector<std::uint8_t> bits_;
};

inline border_profile border_array(const word& w) { return border_profile(w); }

inline double border_poly_value(const border_profile& profile, double x) {
  return profile.value(x);
}

// ---------------------------------------------------------------------------
// Avoidance automaton. States are the proper prefixes of w (matched length
// 0..m-1); reading the last letter of a full occurrence leaves the automaton.

struct transition {
  std::size_t from;
  std::size_t to;
  std::uint64_t multiplicity;
};

inline void check_avoidance_input(const word& w, std::size_t k) {
  if (k < 2) throw std::invalid_argument("avoidance requires k >= 2");
  if (w.empty()) throw std::invalid_argument("avoidance pattern must be non-empty");
  for (symbol s : w) {
    if (s >= k) throw std::invalid_argument("pattern symbol outside [0, k)");
  }
}

// Aggregated transitions of the avoidance automaton, sorted by (from, to).
inline std::vector<transition> avoidance_transitions(const word& w, std::size_t k) {
  check_avoidance_input(w, k);
  const std::size_t m = w.size();
  const auto s = w.symbols();
  const auto pi = prefix_function(s);
  std::vector<std::size_t> delta(m * k, 0);
  for (std::size_t q = 0; q < m; ++q) {
    for (std::size_t a = 0; a < k; ++a) {
      if (s[q] == a) {
        delta[q * k + a] = q + 1;
      } else {
        delta[q * k + a] = q == 0 ? 0 : delta[pi[q - 1] * k + a];
      }
    }
  }
  std::vector<transition> edges;
  std::vector<std::uint64_t> row(m + 1);
  for (std::size_t q = 0; q < m; ++q) {
    std::fill(row.begin(), row.end(), 0);
    for (std::size_t a = 0; a < k; ++a) ++row[delta[q * k + a]];
    for (std::size_t t = 0; t < m; ++t) {
      if (row[t] != 0) edges.push_back({q, t, row[t]});
    }
  }
  return edges;
}

inline constexpr std::uint64_t default_avoidance_budget = 100'000'000;

// A_w(0..n) exactly.
inline std::vector<big_int> avoidance_count_exact(
    const word& w, std::size_t k, std::size_t n,
    std::uint64_t budget = default_avoidance_budget) {
  check_avoidance_input(w, k);
  if (static_cast<double>(n) * static_cast<double>(w.size()) > static_cast<double>(budget)) {
    throw budget_exceeded("avoidance DP size n*|w| = " +
                          std::to_string(n * w.size()) + " exceeds budget " +
                          std::to_string(budget));
  }
  const auto edges = avoidance_transitions(w, k);
  const std::size_t m = w.size();
  std::vector<big_int> cur(m, 0), next(m);
  cur[0] = 1;
  std::vector<big_int> counts;
  counts.reserve(n + 1);
  counts.emplace_back(1);
  for (std::size_t step = 1; step <= n; ++step) {
    std::fill(next.begin(), next.end(), 0);
    for (const auto& e : edges) next[e.to] += cur[e.from] * e.multiplicity;
    std::swap(cur, next);
    big_int total = 0;
    for (const auto& c : cur) total += c;
    counts.push_back(std::move(total));
  }
  return counts;
}

// A_w(i) / k^i for i = 0..n, carried as probabilities so n may be huge.
inline std::vector<double> survival_probability(const word& w, std::size_t k,
                                                std::size_t n) {
  const auto edges = avoidance_transitions(w, k);
  const std::size_t m = w.size();
  const double inv_k = 1.0 / static_cast<double>(k);
  std::vector<double> cur(m, 0.0), next(m);
  cur[0] = 1.0;
  std::vector<double> out;
  out.reserve(n + 1);
  out.push_back(1.0);
  for (std::size_t step = 1; step <= n; ++step) {
    std::fill(next.begin(), next.end(), 0.0);
    for (const auto& e : edges) {
      next[e.to] += cur[e.from] * (static_cast<double>(e.multiplicity) * inv_k);
    }
    std::swap(cur, next);
    out.push_back(std::accumulate(cur.begin(), cur.end(), 0.0));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dominant root.

struct dominant_root_result {
  double theta = 0.0;
  bool subexponential = false;  // theta within 1e-9 of 1 or below
  std::size_t iterations = 0;
};

inline constexpr std::size_t power_iteration_cap = 1'000'000;
inline constexpr double power_iteration_tolerance = 1e-12;

namespace detail {

// Strongly connected components (Tarjan, iterative), as vertex lists.
inline std::vector<std::vector<std::size_t>> strong_components(
    std::size_t n, const std::vector<transition>& edges) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& e : edges) adj[e.from].push_back(e.to);
  constexpr std::size_t unvisited = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(n, unvisited), low(n, 0), stack;
  std::vector<bool> on_stack(n, false);
  std::vector<std::vector<std::size_t>> components;
  std::size_t counter = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != unvisited) continue;
    std::vector<std::pair<std::size_t, std::size_t>> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, next_edge] = frames.back();
      if (next_edge < adj[v].size()) {
        std::size_t u = adj[v][next_edge++];
        if (index[u] == unvisited) {
          index[u] = low[u] = counter++;
          stack.push_back(u);
          on_stack[u] = true;
          frames.emplace_back(u, 0);
        } else if (on_stack[u]) {
          low[v] = std::min(low[v], index[u]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<std::size_t> component;
        std::size_t u;
        do {
          u = stack.back();
          stack.pop_back();
          on_stack[u] = false;
          component.push_back(u);
        } while (u != v);
        components.push_back(std::move(component));
      }
      const std::size_t finished = v;
      frames.pop_back();
      if (!frames.empty()) {
        auto& parent = frames.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
    }
  }
  return components;
}

// Spectral radius of an irreducible nonnegative block by power iteration on
// B + I (aperiodic, same Perron vector). Collatz-Wielandt bounds bracket the
// eigenvalue; iteration continues to the long double floor and must reach
// the relative tolerance before the cap.
inline std::pair<long double, std::size_t> irreducible_radius(
    const std::vector<std::size_t>& vertices, const std::vector<transition>& edges,
    std::size_t n_states) {
  std::vector<std::size_t> local(n_states, std::numeric_limits<std::size_t>::max());
  for (std::size_t i = 0; i < vertices.size(); ++i) local[vertices[i]] = i;
  struct local_edge {
    std::size_t from, to;
    long double weight;
  };
  std::vector<local_edge> block;
  for (const auto& e : edges) {
    auto f = local[e.from], t = local[e.to];
    if (f != std::numeric_limits<std::size_t>::max() &&
        t != std::numeric_limits<std::size_t>::max()) {
      block.push_back({f, t, static_cast<long double>(e.multiplicity)});
    }
  }
  if (block.empty()) return {0.0L, 0};

  const std::size_t d = vertices.size();
  // Right eigenvector of the transposed count matrix: (M^T v)_to += w v_from.
  std::vector<long double> v(d, 1.0L), w(d);
  long double best_gap = std::numeric_limits<long double>::infinity();
  std::size_t stalled = 0;
  long double estimate = 0.0L;
  for (std::size_t it = 1; it <= power_iteration_cap; ++it) {
    w = v;  // the +I shift
    for (const auto& e : block) w[e.to] += e.weight * v[e.from];
    long double lo = std::numeric_limits<long double>::infinity(), hi = 0.0L;
    for (std::size_t i = 0; i < d; ++i) {
      long double r = w[i] / v[i];
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    estimate = (lo + hi) / 2 - 1.0L;
    const long double gap = hi - lo;
    long double norm = *std::max_element(w.begin(), w.end());
    for (std::size_t i = 0; i < d; ++i) v[i] = w[i] / norm;
    const long double scale = std::max(1.0L, estimate);
    if (gap <= 8 * std::numeric_limits<long double>::epsilon() * (scale + 1)) {
      return {estimate, it};
    }
    if (gap < best_gap) {
      best_gap = gap;
      stalled = 0;
    } else if (++stalled > 64 && gap <= power_iteration_tolerance * scale) {
      return {estimate, it};
    }
  }
  throw std::runtime_error("power iteration did not converge");
}

}  // namespace detail

// Growth rate of A_w(n): the spectral radius of the avoidance automaton's
// transition-count matrix, taken as the maximum over its strongly connected
// components so reducible cases (e.g. w = ab, polynomial growth) resolve.
inline dominant_root_result dominant_root(const word& w, std::size_t k) {
  if (w.size() < 2) throw std::invalid_argument("dominant_root requires |w| >= 2");
  const auto edges = avoidance_transitions(w, k);
  dominant_root_result result;
  long double best = 0.0L;
  for (const auto& component : detail::strong_components(w.size(), edges)) {
    auto [radius, iterations] = detail::irreducible_radius(component, edges, w.size());
    best = std::max(best, radius);
    result.iterations += iterations;
  }
  result.theta = static_cast<double>(best);
  result.subexponential = result.theta < 1.0 + 1e-9;
  return result;
}

struct theta_c {
  double theta;
  double c;
};

// theta ~ k - 1/f(k) - f'(k)/f(k)^3 and C = 1 / (1 - (k - theta)^2 f'(theta)),
// the latter evaluated at the expansion's theta. Requires |w| > 3.
inline theta_c asymptotic_theta_C(const border_profile& profile, std::size_t k) {
  if (profile.size() <= 3) {
    throw std::invalid_argument("asymptotic expansion requires |w| > 3");
  }
  if (k < 2) throw std::invalid_argument("asymptotic expansion requires k >= 2");
  const long double kk = static_cast<long double>(k);
  const long double fk = profile.value(kk);
  const long double dfk = profile.derivative(kk);
  const long double theta = kk - 1.0L / fk - dfk / (fk * fk * fk);
  const long double gap = kk - theta;
  const long double c = 1.0L / (1.0L - gap * gap * profile.derivative(theta));
  return {static_cast<double>(theta), static_cast<double>(c)};
}

// Exact leading coefficient for a known theta (the dominant root):
// C = f(theta) / p'(theta) with p(x) = (x - k) f(x) + 1, which equals
// 1 / (1 - (k - theta)^2 f'(theta)) whenever p(theta) = 0.
inline double leading_coefficient(const border_profile& profile, std::size_t k,
                                  double theta) {
  const long double t = theta;
  const long double gap = static_cast<long double>(k) - t;
  return static_cast<double>(1.0L / (1.0L - gap * gap * profile.derivative(t)));
}

// theta for w = a^m: k - (k-1)/k^m - m(k-1)^2/k^(2m+1).
inline double theta_unary_expansion(std::size_t m, std::size_t k) {
  if (m <= 3) throw std::invalid_argument("theta_unary_expansion requires m > 3");
  if (k < 2) throw std::invalid_argument("theta_unary_expansion requires k >= 2");
  const long double kk = static_cast<long double>(k);
  const long double km = std::pow(kk, static_cast<long double>(m));
  const long double k2m1 = std::pow(kk, static_cast<long double>(2 * m + 1));
  return static_cast<double>(kk - (kk - 1) / km -
                             static_cast<long double>(m) * (kk - 1) * (kk - 1) / k2m1);
}

// Largest e with base^e <= value.
inline std::size_t floor_log(std::size_t value, std::size_t base) {
  std::size_t e = 0;
  for (std::size_t p = base; p <= value; p *= base) {
    ++e;
    if (p > value / base) break;
  }
  return e;
}

// theta for f_w = x^(m-1) + x^c:
// k - 1/k^(m-1) + 1/k^(2m-2-c) - (m-1)/k^(2m-1).
inline double theta_palindrome_expansion(std::size_t m, std::size_t c, std::size_t k) {
  if (m <= 3) throw std::invalid_argument("theta_palindrome_expansion requires m > 3");
  if (k < 2) throw std::invalid_argument("theta_palindrome_expansion requires k >= 2");
  if (c > floor_log(m, k)) {
    throw std::invalid_argument("border parameter c must lie in [0, floor(log_k m)]");
  }
  const long double kk = static_cast<long double>(k);
  const auto p = [&](std::size_t e) { return std::pow(kk, static_cast<long double>(e)); };
  return static_cast<double>(kk - 1.0L / p(m - 1) + 1.0L / p(2 * m - 2 - c) -
                             static_cast<long double>(m - 1) / p(2 * m - 1));
}

// Checks that f_u(k) < f_w(k) implies A_u(i) <= A_w(i) for all i <= n.
inline bool ordering_check(const word& u, const word& w, std::size_t k, std::size_t n) {
  if (u.size() != w.size()) throw std::invalid_argument("ordering_check needs |u| = |w|");
  if (border_array(u).value_exact(k) >= border_array(w).value_exact(k)) return true;
  const auto au = avoidance_count_exact(u, k, n);
  const auto aw = avoidance_count_exact(w, k, n);
  for (std::size_t i = 0; i <= n; ++i) {
    if (au[i] > aw[i]) return false;
  }
  return true;
}

}  // namespace palrich
