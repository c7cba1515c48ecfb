#pragma once

// Closed-form model for the expected number of distinct palindromic factors
// of a uniform random k-ary word of length n.
//
// Logarithms written log are base k. The oscillation offset is
// eps(n, k) = round(p_o) - p_o in [-1/2, 1/2), i.e. p_o + eps is an integer;
// a length m palindrome sits at eps_m = m/2 - p_e (m even) or
// (m-1)/2 - p_o (m odd), so larger n at fixed m lowers eps_m.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "palrich/bigint.hpp"

namespace palrich {

// k^ceil(m/2), the number of k-ary palindromes of length m.
inline big_int pal_count(std::uint64_t k, std::uint64_t m) {
  if (k < 2 || m < 1) throw std::invalid_argument("pal_count requires k >= 2, m >= 1");
  return big_pow(k, (m + 1) / 2);
}

// Expected number of (not necessarily distinct) palindromic factors of
// length m: (n - m + 1) / k^floor(m/2).
inline double expected_occurrences(std::uint64_t n, std::uint64_t k, std::uint64_t m) {
  if (m < 1 || m > n) throw std::invalid_argument("expected_occurrences requires 1 <= m <= n");
  return static_cast<double>(n - m + 1) /
         std::pow(static_cast<double>(k), static_cast<double>(m / 2));
}

// sum_{i >= c} (i + 1) / k^i = ((c + 1) k - c) / (k^(c-1) (k - 1)^2).
inline double tail_sum(std::uint64_t c, std::uint64_t k) {
  if (k < 2) throw std::invalid_argument("tail_sum requires k >= 2");
  const double kk = static_cast<double>(k), cc = static_cast<double>(c);
  return ((cc + 1) * kk - cc) / (std::pow(kk, cc - 1) * (kk - 1) * (kk - 1));
}

namespace detail {

inline void check_model_input(double n, std::uint64_t k) {
  if (k < 2) throw std::invalid_argument("model requires k >= 2");
  if (!(n >= static_cast<double>(k))) {
    throw std::invalid_argument("model requires n >= k for a non-negative crossover");
  }
}

// Root of g(p) = (2p + shift) ln k - ln(n - 2p + offset) on [0, log_k(n)/2],
// by safeguarded Newton (falls back to bisection inside the bracket).
inline double crossover(double n, std::uint64_t k, double shift, double offset) {
  const double lnk = std::log(static_cast<double>(k));
  auto g = [&](double p) {
    const double rest = n - 2 * p + offset;
    return std::make_pair((2 * p + shift) * lnk - std::log(rest), 2 * lnk + 2 / rest);
  };
  const double hi = std::log(n) / lnk / 2;
  if (g(0.0).first >= 0.0) return 0.0;
  std::uintmax_t iterations = 200;
  const double guess = std::clamp((std::log(n) / lnk - shift) / 2, 0.0, hi);
  const double root = boost::math::tools::newton_raphson_iterate(
      g, guess, 0.0, hi, std::numeric_limits<double>::digits - 2, iterations);
  if (std::abs(g(root).first) > 1e-9) {
    throw std::runtime_error("crossover root finding did not converge");
  }
  return root;
}

}  // namespace detail

// k^(2p) = n - 2p + 1.
inline double intersection_pe(double n, std::uint64_t k) {
  detail::check_model_input(n, k);
  return detail::crossover(n, k, 0.0, 1.0);
}

// k^(2p + 1) = n - 2p.
inline double intersection_po(double n, std::uint64_t k) {
  detail::check_model_input(n, k);
  return detail::crossover(n, k, 1.0, 0.0);
}

inline double wrap_half(double x) {
  double r = x - std::floor(x + 0.5);
  return r >= 0.5 ? r - 1.0 : r;
}

// eps(n, k) in [-1/2, 1/2) with p_o(n, k) + eps an integer.
inline double epsilon_of(double n, std::uint64_t k) {
  return wrap_half(-intersection_po(n, k));
}

// Coefficient of sqrt(n) in the bound
// sum_m min(Pal(k, m), Ehat(n, k, m)) split by parity.
inline double upper_bound_ratio(double n, std::uint64_t k) {
  const double po = intersection_po(n, k);
  const double pe = intersection_pe(n, k);
  const double fo = po - std::floor(po), fe = pe - std::floor(pe);
  const double kk = static_cast<double>(k);
  return (std::sqrt(kk) * (std::pow(kk, 1 - fo) + std::pow(kk, fo)) +
          (std::pow(kk, 1 - fe) + std::pow(kk, fe))) /
         (kk - 1);
}

// f(x) = x (1 - e^(-1/x^2)); expm1 keeps the large-x regime accurate.
inline double f_osc(double x) {
  if (!(x > 0)) throw std::invalid_argument("f_osc requires x > 0");
  return -x * std::expm1(-1.0 / (x * x));
}

struct chi_point {
  double chi;
  double x0;
};

// Maximum of f_osc: the root of f'(x) = 1 - e^(-u) (1 + 2u), u = 1/x^2.
inline chi_point chi_x0() {
  auto derivative = [](double x) {
    const double u = 1.0 / (x * x);
    return -std::expm1(-u) - 2 * u * std::exp(-u);
  };
  auto [a, b] = boost::math::tools::bisect(
      derivative, 0.5, 1.5, boost::math::tools::eps_tolerance<double>(52));
  const double x0 = (a + b) / 2;
  return {f_osc(x0), x0};
}

// F(k, eps) = sum_{i in Z} f(k^(eps + i)), period 1 in eps. Terms decay
// geometrically in both directions; Neumaier-compensated summation.
inline double F_series(std::uint64_t k, double eps) {
  if (k < 2) throw std::invalid_argument("F_series requires k >= 2");
  const double lnk = std::log(static_cast<double>(k));
  eps = wrap_half(eps);
  double sum = 0.0, compensation = 0.0;
  auto add = [&](double term) {
    const double t = sum + term;
    compensation += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  };
  constexpr double negligible = 1e-17;
  add(f_osc(std::exp(eps * lnk)));
  for (int i = 1;; ++i) {
    const double term = f_osc(std::exp((eps + i) * lnk));
    add(term);
    if (term < negligible) break;
  }
  for (int i = -1;; --i) {
    const double x = std::exp((eps + i) * lnk);
    if (x == 0.0) break;
    const double term = f_osc(x);
    add(term);
    if (term < negligible) break;
  }
  return sum + compensation;
}

enum class parity { even, odd };

struct prediction_point {
  std::uint64_t m = 0;
  palrich::parity parity = parity::even;
  double epsilon = 0.0;
  double expected_distinct = 0.0;     // main term of E(n, k, m)
  double expected_occurrences = 0.0;  // Ehat(n, k, m)
  double cap = 0.0;                   // Pal(k, m)
  bool negligible = false;            // |eps| beyond the window; reported as 0
};

inline constexpr double default_epsilon_window = 6.0;

// Main term of E(n, k, m): f(k^eps) sqrt(n) for even m, f(k^eps) sqrt(kn)
// for odd m.
inline prediction_point expected_distinct(std::uint64_t n, std::uint64_t k,
                                          std::uint64_t m,
                                          double window = default_epsilon_window) {
  if (m < 1 || m > n) throw std::invalid_argument("expected_distinct requires 1 <= m <= n");
  const double nn = static_cast<double>(n), kk = static_cast<double>(k);
  prediction_point point;
  point.m = m;
  point.parity = m % 2 == 0 ? parity::even : parity::odd;
  if (point.parity == parity::even) {
    point.epsilon = static_cast<double>(m) / 2 - intersection_pe(nn, k);
  } else {
    point.epsilon = static_cast<double>(m - 1) / 2 - intersection_po(nn, k);
  }
  point.expected_occurrences = expected_occurrences(n, k, m);
  point.cap = std::pow(kk, static_cast<double>((m + 1) / 2));
  if (std::abs(point.epsilon) > window) {
    point.negligible = true;
    return point;
  }
  const double coefficient = f_osc(std::pow(kk, point.epsilon));
  point.expected_distinct = coefficient * std::sqrt(point.parity == parity::even ? nn : kk * nn);
  return point;
}

// g(k, eps) = k^eps (1 - e^(-(k-1)/k^(1+2 eps))), the coefficient obtained
// from the unary pattern a^m, which every palindrome of length m dominates.
inline double lower_bound_coefficient(std::uint64_t k, double eps) {
  if (k < 2) throw std::invalid_argument("lower_bound_coefficient requires k >= 2");
  const double kk = static_cast<double>(k);
  return std::pow(kk, eps) * -std::expm1(-(kk - 1) / std::pow(kk, 1 + 2 * eps));
}

// F(k, eps) sqrt(k) + F(k, eps + 1/2) as a function of the offset.
inline double ratio_at_epsilon(std::uint64_t k, double eps) {
  return F_series(k, eps) * std::sqrt(static_cast<double>(k)) + F_series(k, eps + 0.5);
}

// Predicted E(n, k) / sqrt(n).
inline double predicted_ratio(double n, std::uint64_t k) {
  return ratio_at_epsilon(k, epsilon_of(n, k));
}

struct periodic_extrema {
  double min_value;
  double argmin;  // in [-1/2, 1/2)
  double max_value;
  double argmax;
  std::size_t local_minima;  // on the sampling grid, per period
  std::size_t local_maxima;
};

inline constexpr double default_extremum_grid_step = 1e-4;

// Extrema of a period-1 function: dense grid over [-1/2, 1/2), then Brent
// refinement within one grid step of the best sample.
inline periodic_extrema find_periodic_extrema(const std::function<double(double)>& fn,
                                              double step = default_extremum_grid_step) {
  const auto samples = static_cast<std::size_t>(std::llround(1.0 / step));
  std::vector<double> values(samples);
  for (std::size_t i = 0; i < samples; ++i) values[i] = fn(-0.5 + step * static_cast<double>(i));
  const auto lo = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
  const auto hi = static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());

  periodic_extrema out{};
  for (std::size_t i = 0; i < samples; ++i) {
    const double prev = values[(i + samples - 1) % samples];
    const double next = values[(i + 1) % samples];
    if (values[i] < prev && values[i] <= next) ++out.local_minima;
    if (values[i] > prev && values[i] >= next) ++out.local_maxima;
  }

  constexpr int bits = std::numeric_limits<double>::digits / 2;
  const double at_lo = -0.5 + step * static_cast<double>(lo);
  auto [xmin, vmin] = boost::math::tools::brent_find_minima(fn, at_lo - step, at_lo + step, bits);
  const double at_hi = -0.5 + step * static_cast<double>(hi);
  auto negated = [&](double e) { return -fn(e); };
  auto [xmax, vmax] = boost::math::tools::brent_find_minima(negated, at_hi - step, at_hi + step, bits);

  out.min_value = std::min(vmin, values[lo]);
  out.argmin = vmin <= values[lo] ? wrap_half(xmin) : at_lo;
  out.max_value = std::max(-vmax, values[hi]);
  out.argmax = -vmax >= values[hi] ? wrap_half(xmax) : at_hi;
  return out;
}

// liminf / limsup of E(n, k) / sqrt(n) and the offsets attaining them.
struct oscillation_constants {
  std::uint64_t k;
  double c_low;
  double eps_low;
  double c_high;
  double eps_high;
};

inline oscillation_constants ratio_constants(std::uint64_t k,
                                             double step = default_extremum_grid_step) {
  if (k < 2) throw std::invalid_argument("ratio_constants requires k >= 2");
  auto e = find_periodic_extrema([k](double eps) { return ratio_at_epsilon(k, eps); }, step);
  return {k, e.min_value, e.argmin, e.max_value, e.argmax};
}

inline periodic_extrema F_extrema(std::uint64_t k, double step = default_extremum_grid_step) {
  if (k < 2) throw std::invalid_argument("F_extrema requires k >= 2");
  return find_periodic_extrema([k](double eps) { return F_series(k, eps); }, step);
}

// Large-alphabet behaviour: c_low -> 3 - 1/e and c_high / sqrt(k) -> chi.
struct limit_row {
  std::uint64_t k;
  double c_low;
  double low_distance;   // |c_low - (3 - 1/e)|
  double refined_low_distance;  // |c_low - refined_low_limit()|
  double c_high_scaled;  // c_high / sqrt(k)
  double high_distance;  // |c_high / sqrt(k) - chi|
};

inline constexpr double low_limit = 3.0 - 1.0 / std::numbers::e;

// The large-k minimum of the ratio with the offset optimised at scale
// 1/log k around eps = -1/2: min over u of 2 cosh(u) + f(e^u). It lies
// slightly below 3 - 1/e, which is the value at eps = -1/2 itself.
inline double refined_low_limit() {
  auto g = [](double u) { return 2 * std::cosh(u) + f_osc(std::exp(u)); };
  return boost::math::tools::brent_find_minima(g, -1.0, 1.0, std::numeric_limits<double>::digits / 2)
      .second;
}

inline std::vector<limit_row> limit_constants(
    const std::vector<std::uint64_t>& ks = {100, 1000, 10000}) {
  const double chi = chi_x0().chi;
  const double refined = refined_low_limit();
  std::vector<limit_row> rows;
  for (auto k : ks) {
    const auto c = ratio_constants(k);
    const double scaled = c.c_high / std::sqrt(static_cast<double>(k));
    rows.push_back({k, c.c_low, std::abs(c.c_low - low_limit), std::abs(c.c_low - refined), scaled,
                    std::abs(scaled - chi)});
  }
  return rows;
}

struct separation_result {
  std::uint64_t k;
  double difference;            // F(k, 0) - F(k, 1/2)
  std::optional<double> bound;  // closed-form lower bound, k >= 4
  periodic_extrema extrema;     // of F(k, .)
};

// F(k, 0) - F(k, 1/2) >= 1 - 1/e + 2(1 - sqrt k)/(k - 1)
//   + (k^(3/2) - 1)/(2(k^3 - 1)) - k^(5/2)/(6(k^5 - 1)) + 1/(sqrt(k) e^k).
inline double separation_bound(std::uint64_t k) {
  const double kk = static_cast<double>(k), sk = std::sqrt(kk);
  return 1 - 1 / std::numbers::e + 2 * (1 - sk) / (kk - 1) +
         (std::pow(kk, 1.5) - 1) / (2 * (std::pow(kk, 3) - 1)) -
         std::pow(kk, 2.5) / (6 * (std::pow(kk, 5) - 1)) + 1 / (sk * std::exp(kk));
}

inline separation_result separation_check(std::uint64_t k) {
  if (k < 2) throw std::invalid_argument("separation_check requires k >= 2");
  separation_result r{k, F_series(k, 0.0) - F_series(k, 0.5), std::nullopt, F_extrema(k)};
  if (k >= 4) r.bound = separation_bound(k);
  return r;
}

}  // namespace palrich
