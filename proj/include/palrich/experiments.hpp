#pragma once

// Monte Carlo harness and exact small-n expectations.
//
// Trial t always draws its word from seed{master, t}, and aggregation runs in
// trial order after all workers finish, so results do not depend on the
// number of worker threads.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "palrich/analytic.hpp"
#include "palrich/avoidance.hpp"
#include "palrich/bigint.hpp"
#include "palrich/eertree.hpp"
#include "palrich/error.hpp"
#include "palrich/squares.hpp"
#include "palrich/wordgen.hpp"

namespace palrich {

enum class experiment_mode { richness, richness_histogram, squares };

struct experiment_config {
  std::size_t k = 2;
  std::uint64_t n = 1;
  std::uint64_t trials = 1;
  std::uint64_t master_seed = 0;
  unsigned parallelism = 1;
  experiment_mode mode = experiment_mode::richness;
  std::optional<std::size_t> square_cap;  // default_square_cap when absent
  std::optional<double> time_budget_seconds;
  std::optional<std::uint64_t> memory_budget_bytes;
};

struct experiment_result {
  double mean = 0.0;
  double stddev = 0.0;  // unbiased
  double ratio_to_sqrt_n = 0.0;
  std::map<std::size_t, double> per_length;  // histogram mode only
  std::vector<double> samples;               // per completed trial, trial order
  std::uint64_t trials_completed = 0;
  bool partial = false;  // time budget hit before all trials ran
  double wall_seconds = 0.0;
  std::size_t square_cap = 0;
  double truncation_bound = 0.0;
};

// Rough peak bytes per concurrent trial.
inline std::uint64_t trial_memory_estimate(const experiment_config& c) {
  const std::uint64_t per_symbol = c.mode == experiment_mode::squares ? 1 + 2 * 16 : 1;
  return c.n * per_symbol + (std::uint64_t{1} << 20);
}

namespace detail {

struct trial_outcome {
  double value = 0.0;
  std::vector<std::uint64_t> lengths;
};

inline trial_outcome run_trial(const experiment_config& c, std::size_t cap, std::uint64_t t) {
  trial_outcome out;
  const seed s{c.master_seed, t};
  if (c.mode == experiment_mode::squares) {
    const word w = random_word(c.k, c.n, s);
    out.value = static_cast<double>(distinct_squares_capped(w, cap).total);
    return out;
  }
  symbol_source source(c.k, s);
  with_eertree_for(c.n, c.k, [&](auto& tree) {
    for (std::uint64_t i = 0; i < c.n; ++i) tree.push(source.next());
    out.value = static_cast<double>(tree.richness());
    if (c.mode == experiment_mode::richness_histogram) out.lengths = tree.length_counts();
    return 0;
  });
  return out;
}

}  // namespace detail

inline experiment_result run(const experiment_config& c) {
  if (c.k < 2) throw std::invalid_argument("experiment requires k >= 2");
  check_alphabet_size(c.k);
  if (c.trials < 1) throw std::invalid_argument("experiment requires trials >= 1");
  if (c.n < 1) throw std::invalid_argument("experiment requires n >= 1");
  const unsigned workers = std::max(1u, c.parallelism);
  if (c.memory_budget_bytes) {
    const std::uint64_t need = trial_memory_estimate(c) * std::min<std::uint64_t>(workers, c.trials);
    if (need > *c.memory_budget_bytes) {
      throw budget_exceeded("experiment needs about " + std::to_string(need) +
                            " bytes, budget is " + std::to_string(*c.memory_budget_bytes));
    }
  }

  experiment_result result;
  result.square_cap = c.mode == experiment_mode::squares
                          ? c.square_cap.value_or(default_square_cap(c.n, c.k))
                          : 0;
  if (c.mode == experiment_mode::squares && result.square_cap < c.n / 2) {
    result.truncation_bound = square_truncation_bound(c.n, c.k, result.square_cap);
  }

  const auto start = std::chrono::steady_clock::now();
  const auto deadline =
      c.time_budget_seconds
          ? std::optional(start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                      std::chrono::duration<double>(*c.time_budget_seconds)))
          : std::nullopt;

  std::vector<std::optional<detail::trial_outcome>> outcomes(c.trials);
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      if (stop.load()) return;
      if (deadline && std::chrono::steady_clock::now() > *deadline) return;
      const std::uint64_t t = next.fetch_add(1);
      if (t >= c.trials) return;
      try {
        outcomes[t] = detail::run_trial(c, result.square_cap, t);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        stop = true;
        return;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned i = 1; i < workers; ++i) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<std::uint64_t> length_sums;
  for (const auto& o : outcomes) {
    if (!o) continue;
    result.samples.push_back(o->value);
    if (length_sums.size() < o->lengths.size()) length_sums.resize(o->lengths.size(), 0);
    for (std::size_t m = 0; m < o->lengths.size(); ++m) length_sums[m] += o->lengths[m];
  }
  result.trials_completed = result.samples.size();
  result.partial = result.trials_completed < c.trials;
  if (result.trials_completed > 0) {
    double sum = 0.0;
    for (double v : result.samples) sum += v;
    result.mean = sum / static_cast<double>(result.trials_completed);
    if (result.trials_completed > 1) {
      double sq = 0.0;
      for (double v : result.samples) sq += (v - result.mean) * (v - result.mean);
      result.stddev = std::sqrt(sq / static_cast<double>(result.trials_completed - 1));
    }
    for (std::size_t m = 1; m < length_sums.size(); ++m) {
      if (length_sums[m] != 0) {
        result.per_length[m] = static_cast<double>(length_sums[m]) /
                               static_cast<double>(result.trials_completed);
      }
    }
  }
  result.ratio_to_sqrt_n = result.mean / std::sqrt(static_cast<double>(c.n));
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

// ---------------------------------------------------------------------------
// Exact expectations by enumeration.

inline constexpr std::uint64_t default_enumeration_cap = 100'000'000;

struct exact_expectation_result {
  big_rational mean;                                // E(n, k)
  std::map<std::size_t, big_rational> per_length;   // E(n, k, m)
  big_int words;                                    // k^n
};

namespace detail {

inline big_int checked_power(std::uint64_t k, std::uint64_t e, std::uint64_t cap,
                             const char* what) {
  big_int total = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    total *= k;
    if (total > cap) {
      throw budget_exceeded(std::string(what) + " exceeds the enumeration cap " +
                            std::to_string(cap));
    }
  }
  return total;
}

}  // namespace detail

// Average richness over all k^n words, exactly.
inline exact_expectation_result exact_expectation(
    std::size_t k, std::size_t n, std::uint64_t cap = default_enumeration_cap) {
  if (k < 2) throw std::invalid_argument("exact_expectation requires k >= 2");
  check_alphabet_size(k);
  exact_expectation_result out;
  out.words = detail::checked_power(k, n, cap, "k^n");
  const auto count = out.words.convert_to<std::uint64_t>();

  std::vector<symbol> digits(n, 0);
  std::uint64_t total = 0;
  std::vector<std::uint64_t> by_length(n + 1, 0);
  eertree tree(k);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    tree.clear();
    for (symbol s : digits) tree.push(s);
    total += tree.richness();
    const auto counts = tree.length_counts();
    for (std::size_t m = 1; m < counts.size(); ++m) by_length[m] += counts[m];
    for (std::size_t i = n; i-- > 0;) {
      if (++digits[i] < k) break;
      digits[i] = 0;
    }
  }
  out.mean = big_rational(big_int(total), out.words);
  for (std::size_t m = 1; m <= n; ++m) {
    out.per_length[m] = big_rational(big_int(by_length[m]), out.words);
  }
  return out;
}

// E(n, k, m) = sum over palindromes w of length m of (1 - A_w(n) / k^n).
inline big_rational exact_length_expectation(std::size_t k, std::size_t n, std::size_t m,
                                             std::uint64_t cap = default_enumeration_cap) {
  if (k < 2) throw std::invalid_argument("exact_length_expectation requires k >= 2");
  check_alphabet_size(k);
  if (m < 1) throw std::invalid_argument("exact_length_expectation requires m >= 1");
  if (m > n) return big_rational(0);
  const std::size_t half = (m + 1) / 2;
  const auto count = detail::checked_power(k, half, cap, "k^ceil(m/2)").convert_to<std::uint64_t>();
  const big_int all = big_pow(k, n);
  std::vector<symbol> first(half, 0);
  big_int contained = 0;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::vector<symbol> s(m);
    for (std::size_t i = 0; i < half; ++i) s[i] = first[i];
    for (std::size_t i = half; i < m; ++i) s[i] = s[m - 1 - i];
    const auto avoid = avoidance_count_exact(word(std::move(s), k), k, n);
    contained += all - avoid[n];
    for (std::size_t i = half; i-- > 0;) {
      if (++first[i] < k) break;
      first[i] = 0;
    }
  }
  return big_rational(contained, all);
}

// ---------------------------------------------------------------------------
// Desk-scale rows comparable to the reference constants.

struct reference_constants_row {
  std::uint64_t k;
  double c_low;
  double eps_low;
  double c_high;
  double eps_high;
  std::uint64_t n_low;
  double measured_low;
  std::uint64_t n_high;
  double measured_high;
};

inline const std::vector<reference_constants_row>& reference_constants() {
  static const std::vector<reference_constants_row> rows = {
      {2, 6.17315, -0.103, 6.17368, 0.398, 618843800, 6.17171, 1238545800, 6.17276},
      {3, 4.40121, 0.255, 4.41410, -0.251, 8188445, 4.40052, 24940577, 4.41358},
      {4, 3.81315, 0.360, 3.85763, -0.167, 24747862, 3.81195, 6657745, 3.85465},
      {5, 3.51925, 0.409, 3.60893, -0.129, 13076560, 3.51834, 2914038, 3.60581},
      {6, 3.34259, 0.438, 3.48553, -0.108, 2096750, 3.34202, 14840282, 3.48520},
      {10, 3.02693, 0.485, 3.41133, -0.071, 1071524, 3.02544, 13842043, 3.41175},
      {50, 2.70152, -0.485, 5.09183, -0.032, 5877686, 2.70007, 160063, 5.08441},
  };
  return rows;
}

// n whose crossover is p_o = scale - eps, so round(p_o) = scale and the
// offset of n is eps: n = k^(2 p_o + 1) + 2 p_o, the crossover equation solved for n.
inline std::uint64_t length_for_epsilon(std::uint64_t k, double eps, std::uint64_t scale) {
  const double p = static_cast<double>(scale) - eps;
  if (p < 0) throw std::invalid_argument("scale too small for the requested epsilon");
  const double n = std::pow(static_cast<double>(k), 2 * p + 1) + 2 * p;
  if (n > 9e15) throw std::invalid_argument("requested length is out of range");
  return static_cast<std::uint64_t>(std::llround(n));
}

struct table1_row {
  std::uint64_t k = 0;
  double epsilon_target = 0.0;
  double epsilon_achieved = 0.0;
  std::uint64_t scale = 0;
  std::uint64_t n = 0;
  std::uint64_t trials = 0;
  double predicted = 0.0;
  double measured = 0.0;
  double measured_stderr = 0.0;
  double relative_error = 0.0;  // (measured - predicted) / predicted
  std::optional<double> reference;  // constant at the matching offset, if tabulated
  double wall_seconds = 0.0;
};

inline table1_row table1_desk(std::uint64_t k, double eps, std::uint64_t scale,
                              std::uint64_t trials, std::uint64_t master_seed = 1,
                              unsigned parallelism = 1) {
  table1_row row;
  row.k = k;
  row.epsilon_target = eps;
  row.scale = scale;
  row.trials = trials;
  row.n = length_for_epsilon(k, eps, scale);
  row.epsilon_achieved = epsilon_of(static_cast<double>(row.n), k);
  row.predicted = predicted_ratio(static_cast<double>(row.n), k);
  experiment_config config;
  config.k = k;
  config.n = row.n;
  config.trials = trials;
  config.master_seed = master_seed;
  config.parallelism = parallelism;
  const auto res = run(config);
  const double root_n = std::sqrt(static_cast<double>(row.n));
  row.measured = res.ratio_to_sqrt_n;
  row.measured_stderr = res.stddev / std::sqrt(static_cast<double>(res.trials_completed)) / root_n;
  row.relative_error = (row.measured - row.predicted) / row.predicted;
  row.wall_seconds = res.wall_seconds;
  for (const auto& p : reference_constants()) {
    if (p.k != k) continue;
    if (std::abs(p.eps_low - eps) < 5e-3) row.reference = p.c_low;
    if (std::abs(p.eps_high - eps) < 5e-3) row.reference = p.c_high;
  }
  return row;
}

// ---------------------------------------------------------------------------
// Borders of random palindromes.

struct border_length_result {
  std::size_t k = 0;
  std::size_t m = 0;
  std::uint64_t samples = 0;
  std::size_t threshold = 0;  // floor(log_k m)
  std::uint64_t violations = 0;  // longest proper border >= threshold
  double fraction = 0.0;
  double union_bound = 0.0;  // (2k/(k-1)) k^-floor(log_k(m)/2)
  bool all_have_unit_border = true;
};

inline border_length_result border_length_experiment(std::size_t k, std::size_t m,
                                                     std::uint64_t samples,
                                                     std::uint64_t master_seed = 0) {
  if (m < 4) throw std::invalid_argument("border_length_experiment requires m >= 4");
  if (k < 2) throw std::invalid_argument("border_length_experiment requires k >= 2");
  border_length_result r;
  r.k = k;
  r.m = m;
  r.samples = samples;
  r.threshold = floor_log(m, k);
  const double kk = static_cast<double>(k);
  r.union_bound = 2 * kk / (kk - 1) * std::pow(kk, -static_cast<double>(r.threshold / 2));
  for (std::uint64_t s = 0; s < samples; ++s) {
    const auto profile = border_array(random_palindrome(k, m, seed{master_seed, s}));
    if (profile.longest_proper_border() >= r.threshold) ++r.violations;
    if (!profile.bits().back()) r.all_have_unit_border = false;
  }
  r.fraction = samples ? static_cast<double>(r.violations) / static_cast<double>(samples) : 0.0;
  return r;
}

// ---------------------------------------------------------------------------
// Distinct squares versus sqrt(n).

struct squares_row {
  std::uint64_t n = 0;
  std::size_t cap = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double ratio_to_sqrt_n = 0.0;
  double envelope_ratio = 0.0;  // square_count_envelope / sqrt(n)
  double truncation_bound = 0.0;
};

// cap_rule maps (n, k) to the half-length cap; absent means default_square_cap.
inline std::vector<squares_row> squares_scaling(
    std::size_t k, const std::vector<std::uint64_t>& lengths, std::uint64_t trials,
    const std::function<std::size_t(std::uint64_t, std::size_t)>& cap_rule = {},
    std::uint64_t master_seed = 0, unsigned parallelism = 1) {
  std::vector<squares_row> rows;
  for (auto n : lengths) {
    experiment_config config;
    config.k = k;
    config.n = n;
    config.trials = trials;
    config.master_seed = master_seed;
    config.parallelism = parallelism;
    config.mode = experiment_mode::squares;
    config.square_cap = cap_rule ? cap_rule(n, k) : default_square_cap(n, k);
    const auto res = run(config);
    squares_row row;
    row.n = n;
    row.cap = res.square_cap;
    row.mean = res.mean;
    row.stddev = res.stddev;
    row.ratio_to_sqrt_n = res.ratio_to_sqrt_n;
    row.envelope_ratio = square_count_envelope(n, k) / std::sqrt(static_cast<double>(n));
    row.truncation_bound = res.truncation_bound;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace palrich
