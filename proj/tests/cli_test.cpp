#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "cli.hpp"

namespace {

struct outcome {
  int code;
  std::string out;
  std::string err;
};

outcome call(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "palrich");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = palrich::cli::run_cli(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json call_json(std::vector<std::string> args, const std::string& input = "") {
  args.push_back("--json");
  args.push_back("--no-meta");
  auto r = call(std::move(args), input);
  EXPECT_EQ(r.code, 0) << r.err;
  return nlohmann::json::parse(r.out);
}

}  // namespace

TEST(Cli, ParseCount) {
  using palrich::cli::parse_count;
  EXPECT_EQ(parse_count("1238545800", "n"), 1238545800u);
  EXPECT_EQ(parse_count("1_000_000", "n"), 1000000u);
  EXPECT_EQ(parse_count("1e9", "n"), 1000000000u);
  EXPECT_EQ(parse_count("1.2385458e9", "n"), 1238545800u);
  EXPECT_THROW(parse_count("1.5", "n"), std::invalid_argument);
  EXPECT_THROW(parse_count("-3", "n"), std::invalid_argument);
  EXPECT_THROW(parse_count("12x", "n"), std::invalid_argument);
}

TEST(Cli, RichnessFromStdin) {
  auto r = call({"richness", "--alphabet", "01"}, "001101001\n");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("total=8\n"), std::string::npos);
}

TEST(Cli, RichnessRandomEmpty) {
  auto r = call({"richness", "--random", "0"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("total=0\n"), std::string::npos);
}

TEST(Cli, RichnessHistogram) {
  auto r = call({"richness", "--stdin", "--hist"}, "000");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("hist=1:1,2:1,3:1\n"), std::string::npos);
}

TEST(Cli, RichnessErrors) {
  auto bad = call({"richness", "--alphabet", "01"}, "0102");
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("position 3"), std::string::npos);
  EXPECT_EQ(call({"richness"}, "").code, 2);
  EXPECT_EQ(call({"richness", "--input", "/nonexistent/file"}).code, 2);
  EXPECT_EQ(call({}).code, 2);
  EXPECT_EQ(call({"frobnicate"}).code, 2);
}

TEST(Cli, PredictReferenceRow) {
  auto j = call_json({"predict", "--k", "2", "--n", "1238545800"});
  EXPECT_NEAR(j["results"]["ratio"].get<double>(), 6.1737, 1e-4);
  EXPECT_EQ(j["schema_version"], "1");
  EXPECT_EQ(j["command"], "predict");
  EXPECT_FALSE(j.contains("meta"));
  EXPECT_EQ(call({"predict", "--k", "1", "--n", "100"}).code, 2);
}

TEST(Cli, PredictIntegralCrossoverMaximisesUpperBound) {
  // n = 2^21 + 20 puts p_o at 10 exactly, where the fractional parts of
  // p_o and p_e are in antiphase and the bound reaches sqrt(k)(k + 3)/(k - 1).
  auto j = call_json({"predict", "--k", "2", "--n", std::to_string((1ull << 21) + 20)});
  EXPECT_NEAR(j["results"]["epsilon"].get<double>(), 0.0, 1e-9);
  const double top = j["results"]["upper_bound_ratio"].get<double>();
  EXPECT_NEAR(top, 5 * std::sqrt(2.0), 1e-9);
  for (std::uint64_t n = (1ull << 21); n < (1ull << 23); n += 99991) {
    auto other = call_json({"predict", "--k", "2", "--n", std::to_string(n)});
    EXPECT_LE(other["results"]["upper_bound_ratio"].get<double>(), top + 1e-12);
  }
}

TEST(Cli, PredictPerLengthTable) {
  auto j = call_json({"predict", "--k", "2", "--n", "131072", "--per-length", "14..20"});
  ASSERT_EQ(j["rows"].size(), 7u);
  EXPECT_EQ(j["rows"][0]["m"], 14);
  EXPECT_EQ(j["rows"][1]["parity"], "odd");
  auto csv = call({"predict", "--k", "2", "--n", "131072", "--per-length", "14..15", "--csv"});
  EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')),
            "m,parity,epsilon,expected_distinct,expected_occurrences,cap,negligible");
}

TEST(Cli, ConstantsLargeAlphabet) {
  auto j = call_json({"constants", "--k", "50"});
  EXPECT_NEAR(j["results"]["c_low"].get<double>(), 2.70152, 1e-4);
  EXPECT_NEAR(j["results"]["c_high"].get<double>(), 5.09183, 1e-4);
  auto human = call({"constants", "--k", "50"});
  const auto value = [&](const std::string& key) {
    const auto at = human.out.find(key + "=");
    EXPECT_NE(at, std::string::npos) << key;
    return std::stod(human.out.substr(at + key.size() + 1));
  };
  EXPECT_NEAR(value("c_low"), 2.70152, 1e-4);
  EXPECT_NEAR(value("c_high"), 5.09183, 1e-4);
}

TEST(Cli, AvoidExact) {
  auto r = call({"avoid", "--word", "aa", "--k", "2", "--n", "4", "--exact"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("A=8\n"), std::string::npos);
  auto j = call_json({"avoid", "--word", "aa", "--k", "2", "--n", "10"});
  EXPECT_EQ(j["results"]["A"], 144);
  EXPECT_NEAR(j["results"]["theta"].get<double>(), 1.6180339887498949, 1e-12);
  auto big = call_json({"avoid", "--word", "0110", "--k", "2", "--n", "200", "--exact"});
  EXPECT_TRUE(big["results"]["A"].is_string());
}

TEST(Cli, AvoidErrors) {
  EXPECT_EQ(call({"avoid", "--word", "ac", "--k", "2", "--n", "4"}).code, 2);
  EXPECT_EQ(call({"avoid", "--word", "aa", "--k", "2", "--n", "1e9", "--exact"}).code, 3);
  EXPECT_EQ(call({"avoid", "--word", "aa", "--k", "2", "--n", "4", "--exact", "--asymptotic"}).code, 2);
}

TEST(Cli, OracleSmall) {
  auto r = call({"oracle", "--k", "2", "--n", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("mean=2\n"), std::string::npos);
  EXPECT_NE(r.out.find("mean_exact=2\n"), std::string::npos);
  auto three = call({"oracle", "--k", "2", "--n", "8"});
  EXPECT_NE(three.out.find("mean_exact=511/64\n"), std::string::npos);
}

TEST(Cli, OracleBudgetFromEnvironment) {
  ::setenv("PALRICH_ENUM_CAP", "1000", 1);
  EXPECT_EQ(call({"oracle", "--k", "2", "--n", "12"}).code, 3);
  ::unsetenv("PALRICH_ENUM_CAP");
  EXPECT_EQ(call({"oracle", "--k", "2", "--n", "3"}).code, 0);
}

TEST(Cli, SimulateCsvHeaderAndDeterminism) {
  auto csv = call({"simulate", "--k", "2", "--n", "1_000", "--trials", "20", "--seed", "4", "--csv"});
  EXPECT_EQ(csv.code, 0) << csv.err;
  EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')), "k,n,trials,seed,mean,stddev,ratio_sqrt_n");
  const std::vector<std::string> args{"simulate", "--k", "3", "--n", "2e3", "--trials", "12",
                                      "--seed", "8", "--json", "--no-meta"};
  auto a = call(args);
  auto b = call(args);
  auto threaded = args;
  threaded.insert(threaded.end(), {"--jobs", "3"});
  auto c = call(threaded);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
}

TEST(Cli, SimulateMemoryCap) {
  ::setenv("PALRICH_MEMORY_CAP", "1000", 1);
  EXPECT_EQ(call({"simulate", "--k", "2", "--n", "1e6", "--trials", "1"}).code, 3);
  ::unsetenv("PALRICH_MEMORY_CAP");
}

TEST(Cli, MetaBlockPresentByDefault) {
  auto r = call({"oracle", "--k", "2", "--n", "3", "--json"});
  auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["meta"].contains("timestamp"));
}

TEST(Cli, SquaresWord) {
  auto r = call({"squares", "--stdin"}, "0101");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("total=1\n"), std::string::npos);
  auto j = call_json({"squares", "--lengths", "500,1000", "--trials", "4"});
  EXPECT_EQ(j["rows"].size(), 2u);
}

TEST(Cli, Table1AndBorders) {
  auto t = call_json({"table1", "--k", "2", "--scale", "4", "--trials", "20", "--eps", "0.398"});
  ASSERT_EQ(t["rows"].size(), 1u);
  EXPECT_NEAR(t["rows"][0]["epsilon_achieved"].get<double>(), 0.398, 5e-3);
  auto b = call_json({"borders", "--k", "2", "--m", "1000", "--samples", "500"});
  EXPECT_EQ(b["results"]["threshold"], 9);
  EXPECT_LE(b["results"]["fraction"].get<double>(), 0.25);
}

TEST(Cli, Help) {
  auto r = call({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("simulate"), std::string::npos);
}

TEST(Cli, EveryCommandEmitsTheSchema) {
  const std::vector<std::vector<std::string>> commands = {
      {"richness", "--random", "50", "--hist"},
      {"predict", "--k", "3", "--n", "1e4", "--per-length", "1..4"},
      {"constants", "--k", "4", "--limits"},
      {"simulate", "--k", "2", "--n", "300", "--trials", "5", "--mode", "hist"},
      {"avoid", "--word", "aba", "--k", "2", "--n", "30"},
      {"squares", "--random", "200", "--exact"},
      {"oracle", "--k", "3", "--n", "4", "--per-length"},
      {"table1", "--k", "3", "--scale", "3", "--trials", "3"},
      {"borders", "--k", "3", "--m", "50", "--samples", "20"},
  };
  for (const auto& args : commands) {
    auto j = call_json(args);
    ASSERT_EQ(j["schema_version"], "1") << args[0];
    EXPECT_EQ(j["command"], args[0]);
    ASSERT_TRUE(j["parameters"].is_object());
    ASSERT_TRUE(j["results"].is_object());
    for (const auto& [key, value] : j["results"].items()) {
      EXPECT_FALSE(value.is_object() || value.is_array()) << args[0] << "." << key;
    }
    if (j.contains("rows")) {
      for (const auto& row : j["rows"]) ASSERT_TRUE(row.is_object());
    }
    auto again = call_json(args);
    EXPECT_EQ(j, nlohmann::json::parse(again.dump())) << args[0];
  }
}
