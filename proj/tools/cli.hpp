#pragma once

// Command-line driver. run_cli takes explicit streams so tests can call it in
// process; main() in palrich.cpp only forwards the real ones.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "palrich/palrich.hpp"

namespace palrich::cli {

using json = nlohmann::ordered_json;

inline constexpr const char* schema_version = "1";
inline constexpr const char* tool_version = "1.0.0";
inline constexpr std::uint64_t default_memory_cap = std::uint64_t{4} << 30;

enum exit_code : int { ok = 0, usage = 2, budget = 3, failure = 1 };

// Accepts plain integers, underscores as digit separators, and scientific
// notation that denotes an integer (1e9, 1.2385458e9).
inline std::uint64_t parse_count(std::string text, const std::string& what) {
  std::string digits;
  for (char c : text) {
    if (c != '_') digits.push_back(c);
  }
  if (digits.empty()) throw std::invalid_argument(what + ": empty value");
  const bool scientific = digits.find_first_of("eE.") != std::string::npos;
  std::size_t used = 0;
  if (!scientific) {
    if (digits[0] == '-') throw std::invalid_argument(what + " must be non-negative");
    std::uint64_t v = 0;
    try {
      v = std::stoull(digits, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument(what + ": cannot parse '" + text + "'");
    }
    if (used != digits.size()) throw std::invalid_argument(what + ": cannot parse '" + text + "'");
    return v;
  }
  long double v = 0;
  try {
    v = std::stold(digits, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(what + ": cannot parse '" + text + "'");
  }
  if (used != digits.size() || !(v >= 0) || v > 1.8e19L || v != std::floor(v)) {
    throw std::invalid_argument(what + ": '" + text + "' is not a non-negative integer");
  }
  return static_cast<std::uint64_t>(v);
}

inline std::optional<std::uint64_t> env_count(const char* name) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  return parse_count(raw, name);
}

inline std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

inline std::string format_value(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_null()) return "";
  return v.dump();
}

inline json big_value(const big_int& v) {
  if (v <= std::numeric_limits<std::uint64_t>::max()) return v.convert_to<std::uint64_t>();
  return v.str();
}

inline std::string rational_string(const big_rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

struct record {
  std::string command;
  json parameters = json::object();
  json results = json::object();
  std::vector<std::string> columns;  // table columns, when the command emits rows
  std::vector<json> rows;
  std::vector<std::string> csv_columns;  // overrides the single-row CSV layout
  double wall_seconds = 0.0;
};

struct output_options {
  bool json = false;
  bool csv = false;
  bool no_meta = false;
};

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

inline void emit(const record& r, const output_options& o, std::ostream& out) {
  if (o.json) {
    json doc;
    doc["schema_version"] = schema_version;
    doc["command"] = r.command;
    doc["parameters"] = r.parameters;
    doc["results"] = r.results;
    if (!r.columns.empty()) doc["rows"] = r.rows;
    if (!o.no_meta) {
      doc["meta"] = {{"tool_version", tool_version},
                     {"timestamp", utc_timestamp()},
                     {"wall_seconds", r.wall_seconds}};
    }
    out << doc.dump() << '\n';
    return;
  }
  auto join_row = [&](const std::vector<std::string>& cols, const json& row) {
    std::string line;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i) line += ',';
      line += row.contains(cols[i]) ? format_value(row[cols[i]]) : "";
    }
    return line;
  };
  if (o.csv) {
    if (!r.columns.empty()) {
      std::string header;
      for (std::size_t i = 0; i < r.columns.size(); ++i) header += (i ? "," : "") + r.columns[i];
      out << header << '\n';
      for (const auto& row : r.rows) out << join_row(r.columns, row) << '\n';
      return;
    }
    json flat = r.parameters;
    for (const auto& [key, value] : r.results.items()) flat[key] = value;
    std::vector<std::string> cols = r.csv_columns;
    if (cols.empty()) {
      for (const auto& [key, value] : flat.items()) cols.push_back(key);
    }
    std::string header;
    for (std::size_t i = 0; i < cols.size(); ++i) header += (i ? "," : "") + cols[i];
    out << header << '\n' << join_row(cols, flat) << '\n';
    return;
  }
  for (const auto& [key, value] : r.results.items()) out << key << '=' << format_value(value) << '\n';
  if (!r.columns.empty()) {
    std::string header;
    for (std::size_t i = 0; i < r.columns.size(); ++i) header += (i ? "," : "") + r.columns[i];
    out << header << '\n';
    for (const auto& row : r.rows) out << join_row(r.columns, row) << '\n';
  }
}

// Word input shared by richness and squares.
struct word_source {
  std::string alphabet = "01";
  std::string input_file;
  bool from_stdin = false;
  std::optional<std::string> random_length;
  std::uint64_t seed = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--alphabet", alphabet, "Symbols, in order")->capture_default_str();
    auto* file = cmd->add_option("--input", input_file, "Read the word from a file");
    auto* in = cmd->add_flag("--stdin", from_stdin, "Read the word from standard input");
    auto* rnd = cmd->add_option("--random", random_length, "Use a random word of length N");
    cmd->add_option("--seed", seed, "Seed for --random")->capture_default_str();
    file->excludes(in)->excludes(rnd);
    in->excludes(rnd);
  }

  static std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
  }

  word load(std::istream& in, json& parameters) const {
    parameters["alphabet"] = alphabet;
    if (random_length) {
      const auto n = parse_count(*random_length, "--random");
      parameters["random"] = n;
      parameters["seed"] = seed;
      return random_word(alphabet.size(), n, palrich::seed{seed, 0});
    }
    std::string text;
    if (!input_file.empty()) {
      std::ifstream f(input_file, std::ios::binary);
      if (!f) throw std::invalid_argument("cannot open input file " + input_file);
      text.assign(std::istreambuf_iterator<char>(f), {});
      parameters["input"] = input_file;
    } else {
      text.assign(std::istreambuf_iterator<char>(in), {});
      if (!from_stdin && text.empty()) {
        throw std::invalid_argument("missing input: use --input FILE, --stdin or --random N");
      }
      parameters["input"] = "stdin";
    }
    return word::from_string(trim(std::move(text)), alphabet);
  }
};

inline std::string join_histogram(const std::map<std::size_t, std::uint64_t>& h) {
  std::string s;
  for (const auto& [len, count] : h) {
    if (!s.empty()) s += ',';
    s += std::to_string(len) + ':' + std::to_string(count);
  }
  return s;
}

inline std::string join_histogram(const std::map<std::size_t, double>& h) {
  std::string s;
  for (const auto& [len, v] : h) {
    if (!s.empty()) s += ',';
    s += std::to_string(len) + ':' + format_double(v);
  }
  return s;
}

inline std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const auto v = parse_count(text, "range");
    return {v, v};
  }
  return {parse_count(text.substr(0, dots), "range start"),
          parse_count(text.substr(dots + 2), "range end")};
}

inline std::string default_alphabet_for(const std::string& text, std::size_t k) {
  bool letters = !text.empty();
  for (char c : text) letters = letters && std::isalpha(static_cast<unsigned char>(c));
  std::string alphabet;
  if (letters) {
    if (k > 26) throw std::invalid_argument("letter words support k <= 26; pass --alphabet");
    for (std::size_t i = 0; i < k; ++i) alphabet.push_back(static_cast<char>('a' + i));
  } else {
    if (k > 10) throw std::invalid_argument("digit words support k <= 10; pass --alphabet");
    for (std::size_t i = 0; i < k; ++i) alphabet.push_back(static_cast<char>('0' + i));
  }
  return alphabet;
}

inline std::vector<std::uint64_t> parse_list(const std::string& text, const std::string& what) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_count(item, what));
  if (out.empty()) throw std::invalid_argument(what + ": empty list");
  return out;
}

inline int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"Palindromic richness of random words: simulation, exact counts and asymptotics",
               "palrich"};
  app.require_subcommand(1);
  app.fallthrough();
  output_options opts;
  app.add_flag("--json", opts.json, "Emit one JSON object");
  app.add_flag("--csv", opts.csv, "Emit CSV");
  app.add_flag("--no-meta", opts.no_meta, "Omit the JSON meta block (timestamps, timings)");
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());

  std::function<record()> action;

  // richness
  auto* c_rich = app.add_subcommand("richness", "Distinct palindromic factors of a word");
  word_source rich_src;
  rich_src.attach(c_rich);
  bool rich_hist = false;
  c_rich->add_flag("--hist", rich_hist, "Also print counts per palindrome length");
  c_rich->callback([&] {
    action = [&] {
      record r{"richness"};
      const word w = rich_src.load(in, r.parameters);
      r.parameters["hist"] = rich_hist;
      r.results["n"] = w.size();
      if (rich_hist) {
        const auto h = richness_histogram(w);
        r.results["total"] = h.total;
        r.results["hist"] = join_histogram(h.by_length);
      } else {
        r.results["total"] = richness(w);
      }
      return r;
    };
  });

  // predict
  auto* c_pred = app.add_subcommand("predict", "Model prediction of E(n, k) / sqrt(n)");
  std::uint64_t pred_k = 2;
  std::string pred_n, pred_range;
  c_pred->add_option("--k", pred_k, "Alphabet size")->required();
  c_pred->add_option("--n", pred_n, "Word length")->required();
  c_pred->add_option("--per-length", pred_range, "Length range M1..M2 for the per-length table");
  c_pred->callback([&] {
    action = [&] {
      record r{"predict"};
      const auto n = parse_count(pred_n, "--n");
      r.parameters["k"] = pred_k;
      r.parameters["n"] = n;
      const double nd = static_cast<double>(n);
      const double eps = epsilon_of(nd, pred_k);
      r.results["p_e"] = intersection_pe(nd, pred_k);
      r.results["p_o"] = intersection_po(nd, pred_k);
      r.results["epsilon"] = eps;
      r.results["F_eps"] = F_series(pred_k, eps);
      r.results["F_eps_half"] = F_series(pred_k, eps + 0.5);
      r.results["ratio"] = predicted_ratio(nd, pred_k);
      r.results["expected_richness"] = predicted_ratio(nd, pred_k) * std::sqrt(nd);
      r.results["upper_bound_ratio"] = upper_bound_ratio(nd, pred_k);
      if (!pred_range.empty()) {
        auto [m1, m2] = parse_range(pred_range);
        if (m1 < 1 || m2 < m1 || m2 > n) {
          throw std::invalid_argument("--per-length needs 1 <= M1 <= M2 <= n");
        }
        r.parameters["per_length"] = pred_range;
        r.columns = {"m", "parity", "epsilon", "expected_distinct", "expected_occurrences",
                     "cap", "negligible"};
        for (auto m = m1; m <= m2; ++m) {
          const auto p = expected_distinct(n, pred_k, m);
          r.rows.push_back({{"m", m},
                            {"parity", p.parity == parity::even ? "even" : "odd"},
                            {"epsilon", p.epsilon},
                            {"expected_distinct", p.expected_distinct},
                            {"expected_occurrences", p.expected_occurrences},
                            {"cap", p.cap},
                            {"negligible", p.negligible}});
        }
      }
      return r;
    };
  });

  // constants
  auto* c_const = app.add_subcommand("constants", "liminf / limsup constants of E(n, k) / sqrt(n)");
  std::uint64_t const_k = 2;
  bool const_limits = false;
  c_const->add_option("--k", const_k, "Alphabet size")->required();
  c_const->add_flag("--limits", const_limits, "Also print the large-k limit rows (k = 100, 1000, 10000)");
  c_const->callback([&] {
    action = [&] {
      record r{"constants"};
      r.parameters["k"] = const_k;
      const auto c = ratio_constants(const_k);
      r.results["c_low"] = c.c_low;
      r.results["eps_low"] = c.eps_low;
      r.results["c_high"] = c.c_high;
      r.results["eps_high"] = c.eps_high;
      const auto s = separation_check(const_k);
      r.results["F_max"] = s.extrema.max_value;
      r.results["F_argmax"] = s.extrema.argmax;
      r.results["F_min"] = s.extrema.min_value;
      r.results["F_argmin"] = s.extrema.argmin;
      r.results["separation"] = s.difference;
      if (s.bound) r.results["separation_bound"] = *s.bound;
      const auto chi = chi_x0();
      r.results["chi"] = chi.chi;
      r.results["x0"] = chi.x0;
      if (const_limits) {
        r.parameters["limits"] = true;
        r.columns = {"k", "c_low", "low_distance", "refined_low_distance", "c_high_scaled",
                     "high_distance"};
        for (const auto& row : limit_constants()) {
          r.rows.push_back({{"k", row.k},
                            {"c_low", row.c_low},
                            {"low_distance", row.low_distance},
                            {"refined_low_distance", row.refined_low_distance},
                            {"c_high_scaled", row.c_high_scaled},
                            {"high_distance", row.high_distance}});
        }
      }
      return r;
    };
  });

  // simulate
  auto* c_sim = app.add_subcommand("simulate", "Monte Carlo over uniform random words");
  std::uint64_t sim_k = 2, sim_seed = 0;
  std::string sim_n, sim_trials = "100", sim_mode = "richness";
  unsigned sim_jobs = hw;
  std::optional<std::size_t> sim_cap;
  std::optional<double> sim_time;
  c_sim->add_option("--k", sim_k, "Alphabet size")->required();
  c_sim->add_option("--n", sim_n, "Word length")->required();
  c_sim->add_option("--trials", sim_trials, "Number of trials")->capture_default_str();
  c_sim->add_option("--seed", sim_seed, "Master seed")->capture_default_str();
  c_sim->add_option("--jobs", sim_jobs, "Worker threads");
  c_sim->add_option("--mode", sim_mode, "richness, hist or squares")
      ->check(CLI::IsMember({"richness", "hist", "squares"}))
      ->capture_default_str();
  c_sim->add_option("--square-cap", sim_cap, "Half-length cap in squares mode");
  c_sim->add_option("--time-budget", sim_time, "Stop starting new trials after this many seconds");
  c_sim->callback([&] {
    action = [&] {
      record r{"simulate"};
      experiment_config c;
      c.k = sim_k;
      c.n = parse_count(sim_n, "--n");
      c.trials = parse_count(sim_trials, "--trials");
      c.master_seed = sim_seed;
      c.parallelism = std::max(1u, sim_jobs);
      c.mode = sim_mode == "squares" ? experiment_mode::squares
               : sim_mode == "hist"  ? experiment_mode::richness_histogram
                                     : experiment_mode::richness;
      c.square_cap = sim_cap;
      c.time_budget_seconds = sim_time;
      c.memory_budget_bytes = env_count("PALRICH_MEMORY_CAP").value_or(default_memory_cap);
      r.parameters["k"] = c.k;
      r.parameters["n"] = c.n;
      r.parameters["trials"] = c.trials;
      r.parameters["seed"] = c.master_seed;
      r.parameters["mode"] = sim_mode;
      const auto res = run(c);
      r.wall_seconds = res.wall_seconds;
      r.results["mean"] = res.mean;
      r.results["stddev"] = res.stddev;
      r.results["ratio_sqrt_n"] = res.ratio_to_sqrt_n;
      r.results["trials_completed"] = res.trials_completed;
      r.results["partial"] = res.partial;
      if (c.mode == experiment_mode::squares) {
        r.results["square_cap"] = res.square_cap;
        r.results["truncation_bound"] = res.truncation_bound;
      } else if (c.n >= c.k) {
        r.results["predicted_ratio"] = predicted_ratio(static_cast<double>(c.n), c.k);
      }
      if (c.mode == experiment_mode::richness_histogram) {
        r.results["hist"] = join_histogram(res.per_length);
      }
      r.csv_columns = {"k", "n", "trials", "seed", "mean", "stddev", "ratio_sqrt_n"};
      return r;
    };
  });

  // avoid
  auto* c_avoid = app.add_subcommand("avoid", "Words of length n avoiding a factor w");
  std::string avoid_word, avoid_n, avoid_alphabet;
  std::uint64_t avoid_k = 2;
  bool avoid_exact = false, avoid_asym = false;
  c_avoid->add_option("--word", avoid_word, "The forbidden factor")->required();
  c_avoid->add_option("--k", avoid_k, "Alphabet size")->required();
  c_avoid->add_option("--n", avoid_n, "Length of the counted words")->required();
  c_avoid->add_option("--alphabet", avoid_alphabet, "Symbols (default a.. for letters, 0.. otherwise)");
  auto* f_exact = c_avoid->add_flag("--exact", avoid_exact, "Exact count A_w(n) only");
  auto* f_asym = c_avoid->add_flag("--asymptotic", avoid_asym, "Growth rate and C theta^n only");
  f_exact->excludes(f_asym);
  c_avoid->callback([&] {
    action = [&] {
      record r{"avoid"};
      const std::string alphabet =
          avoid_alphabet.empty() ? default_alphabet_for(avoid_word, avoid_k) : avoid_alphabet;
      if (alphabet.size() != avoid_k) {
        throw std::invalid_argument("--alphabet must have exactly k symbols");
      }
      const word w = word::from_string(avoid_word, alphabet);
      const auto n = parse_count(avoid_n, "--n");
      r.parameters["word"] = avoid_word;
      r.parameters["k"] = avoid_k;
      r.parameters["n"] = n;
      r.parameters["alphabet"] = alphabet;
      r.parameters["mode"] = avoid_exact ? "exact" : avoid_asym ? "asymptotic" : "both";
      const auto profile = border_array(w);
      r.results["border_array"] = profile.to_string();
      r.results["f_k"] = big_value(profile.value_exact(avoid_k));
      if (!avoid_asym) {
        const auto counts = avoidance_count_exact(w, avoid_k, n);
        r.results["A"] = big_value(counts[n]);
      }
      if (!avoid_exact && w.size() >= 2) {
        const auto root = dominant_root(w, avoid_k);
        const double c = leading_coefficient(profile, avoid_k, root.theta);
        r.results["theta"] = root.theta;
        r.results["subexponential"] = root.subexponential;
        if (!root.subexponential) {
          r.results["C"] = c;
          r.results["approximation"] = c * std::pow(root.theta, static_cast<double>(n));
        }
        if (w.size() > 3) {
          const auto tc = asymptotic_theta_C(profile, avoid_k);
          r.results["theta_expansion"] = tc.theta;
          r.results["C_expansion"] = tc.c;
        }
      }
      return r;
    };
  });

  // squares
  auto* c_sq = app.add_subcommand("squares", "Distinct squares uu of a word, or scaling over random words");
  word_source sq_src;
  sq_src.attach(c_sq);
  std::optional<std::size_t> sq_cap;
  bool sq_exact = false;
  std::string sq_lengths, sq_trials = "100";
  unsigned sq_jobs = hw;
  c_sq->add_option("--cap", sq_cap, "Half-length cap (default ceil(4 log_k n) + 16)");
  c_sq->add_flag("--exact", sq_exact, "No cap; refuses words longer than 1e5");
  c_sq->add_option("--lengths", sq_lengths, "Comma-separated lengths for a scaling table");
  c_sq->add_option("--trials", sq_trials, "Trials per length in scaling mode")->capture_default_str();
  c_sq->add_option("--jobs", sq_jobs, "Worker threads in scaling mode");
  c_sq->callback([&] {
    action = [&] {
      record r{"squares"};
      if (!sq_lengths.empty()) {
        const auto lengths = parse_list(sq_lengths, "--lengths");
        const auto trials = parse_count(sq_trials, "--trials");
        const std::size_t k = sq_src.alphabet.size();
        r.parameters["k"] = k;
        r.parameters["lengths"] = sq_lengths;
        r.parameters["trials"] = trials;
        r.parameters["seed"] = sq_src.seed;
        std::function<std::size_t(std::uint64_t, std::size_t)> rule;
        if (sq_cap) {
          const auto cap = *sq_cap;
          rule = [cap](std::uint64_t, std::size_t) { return cap; };
        }
        const auto start = std::chrono::steady_clock::now();
        const auto rows = squares_scaling(k, lengths, trials, rule, sq_src.seed, std::max(1u, sq_jobs));
        r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        r.columns = {"n", "cap", "mean", "stddev", "ratio_sqrt_n", "envelope_ratio", "truncation_bound"};
        double lo = std::numeric_limits<double>::infinity(), hi = 0;
        for (const auto& row : rows) {
          lo = std::min(lo, row.ratio_to_sqrt_n);
          hi = std::max(hi, row.ratio_to_sqrt_n);
          r.rows.push_back({{"n", row.n},
                            {"cap", row.cap},
                            {"mean", row.mean},
                            {"stddev", row.stddev},
                            {"ratio_sqrt_n", row.ratio_to_sqrt_n},
                            {"envelope_ratio", row.envelope_ratio},
                            {"truncation_bound", row.truncation_bound}});
        }
        r.results["spread"] = lo > 0 ? hi / lo : 0.0;
        return r;
      }
      const word w = sq_src.load(in, r.parameters);
      r.parameters["exact"] = sq_exact;
      const auto profile = sq_exact ? distinct_squares_exact(w)
                                    : distinct_squares_capped(
                                          w, sq_cap.value_or(default_square_cap(
                                                 std::max<std::size_t>(w.size(), 1),
                                                 std::max<std::size_t>(w.alphabet_size(), 2))));
      r.results["n"] = w.size();
      r.results["total"] = profile.total;
      r.results["max_half_length"] = profile.max_half_length;
      r.results["truncation_bound"] = profile.truncation_bound;
      r.results["hist"] = join_histogram(profile.by_half_length);
      return r;
    };
  });

  // oracle
  auto* c_oracle = app.add_subcommand("oracle", "Exact E(n, k) by enumerating all k^n words");
  std::uint64_t oracle_k = 2;
  std::string oracle_n;
  bool oracle_per_length = false;
  c_oracle->add_option("--k", oracle_k, "Alphabet size")->required();
  c_oracle->add_option("--n", oracle_n, "Word length")->required();
  c_oracle->add_flag("--per-length", oracle_per_length, "Also print E(n, k, m) for each m");
  c_oracle->callback([&] {
    action = [&] {
      record r{"oracle"};
      const auto n = parse_count(oracle_n, "--n");
      const auto cap = env_count("PALRICH_ENUM_CAP").value_or(default_enumeration_cap);
      r.parameters["k"] = oracle_k;
      r.parameters["n"] = n;
      if (oracle_k < 2) throw std::invalid_argument("oracle requires k >= 2");
      const auto e = exact_expectation(oracle_k, n, cap);
      r.results["mean"] = static_cast<double>(e.mean);
      r.results["mean_exact"] = rational_string(e.mean);
      r.results["words"] = big_value(e.words);
      if (oracle_per_length) {
        r.columns = {"m", "expected", "expected_exact"};
        for (const auto& [m, v] : e.per_length) {
          r.rows.push_back({{"m", m}, {"expected", static_cast<double>(v)},
                            {"expected_exact", rational_string(v)}});
        }
      }
      return r;
    };
  });

  // table1
  auto* c_t1 = app.add_subcommand("table1", "Desk-scale Monte Carlo rows at the extremal offsets");
  std::uint64_t t1_k = 2, t1_scale = 9, t1_seed = 1;
  std::string t1_trials = "100";
  std::optional<double> t1_eps;
  unsigned t1_jobs = hw;
  c_t1->add_option("--k", t1_k, "Alphabet size")->required();
  c_t1->add_option("--scale", t1_scale, "Integer part of the crossover p_o")->capture_default_str();
  c_t1->add_option("--trials", t1_trials, "Trials per row")->capture_default_str();
  c_t1->add_option("--seed", t1_seed, "Master seed")->capture_default_str();
  c_t1->add_option("--eps", t1_eps, "Target offset (default: both extremal offsets)");
  c_t1->add_option("--jobs", t1_jobs, "Worker threads");
  c_t1->callback([&] {
    action = [&] {
      record r{"table1"};
      const auto trials = parse_count(t1_trials, "--trials");
      r.parameters["k"] = t1_k;
      r.parameters["scale"] = t1_scale;
      r.parameters["trials"] = trials;
      r.parameters["seed"] = t1_seed;
      std::vector<double> targets;
      if (t1_eps) {
        targets.push_back(*t1_eps);
        r.parameters["eps"] = *t1_eps;
      } else {
        const auto c = ratio_constants(t1_k);
        targets = {c.eps_low, c.eps_high};
      }
      r.columns = {"k", "scale", "n", "epsilon_target", "epsilon_achieved", "trials", "predicted",
                   "measured", "measured_stderr", "relative_error", "reference"};
      for (double eps : targets) {
        const auto row = table1_desk(t1_k, eps, t1_scale, trials, t1_seed, std::max(1u, t1_jobs));
        r.wall_seconds += row.wall_seconds;
        r.rows.push_back({{"k", row.k},
                          {"scale", row.scale},
                          {"n", row.n},
                          {"epsilon_target", row.epsilon_target},
                          {"epsilon_achieved", row.epsilon_achieved},
                          {"trials", row.trials},
                          {"predicted", row.predicted},
                          {"measured", row.measured},
                          {"measured_stderr", row.measured_stderr},
                          {"relative_error", row.relative_error},
                          {"reference", row.reference ? json(*row.reference) : json(nullptr)}});
      }
      r.results["rows"] = r.rows.size();
      return r;
    };
  });

  // borders
  auto* c_bord = app.add_subcommand("borders", "Longest proper borders of random palindromes");
  std::uint64_t bord_k = 2, bord_seed = 0;
  std::string bord_m, bord_samples = "10000";
  c_bord->add_option("--k", bord_k, "Alphabet size")->required();
  c_bord->add_option("--m", bord_m, "Palindrome length")->required();
  c_bord->add_option("--samples", bord_samples, "Number of palindromes")->capture_default_str();
  c_bord->add_option("--seed", bord_seed, "Master seed")->capture_default_str();
  c_bord->callback([&] {
    action = [&] {
      record r{"borders"};
      const auto m = parse_count(bord_m, "--m");
      const auto samples = parse_count(bord_samples, "--samples");
      r.parameters["k"] = bord_k;
      r.parameters["m"] = m;
      r.parameters["samples"] = samples;
      r.parameters["seed"] = bord_seed;
      const auto b = border_length_experiment(bord_k, m, samples, bord_seed);
      r.results["threshold"] = b.threshold;
      r.results["violations"] = b.violations;
      r.results["fraction"] = b.fraction;
      r.results["union_bound"] = b.union_bound;
      r.results["all_have_unit_border"] = b.all_have_unit_border;
      return r;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::CallForVersion&) {
    out << tool_version << '\n';
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  }
  if (opts.json && opts.csv) {
    err << "error: --json and --csv are mutually exclusive\n";
    return usage;
  }
  try {
    emit(action(), opts, out);
    return ok;
  } catch (const budget_exceeded& e) {
    err << "error: budget exceeded: " << e.what() << '\n';
    return budget;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return failure;
  }
}

}  // namespace palrich::cli
