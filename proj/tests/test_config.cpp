#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "cfindep/run.hpp"

using namespace cfindep;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kConfigDir = CFINDEP_TEST_CONFIGS;

SequenceConfig random_sequence(std::mt19937_64& rng, int depth) {
  static const char* kinds[] = {"constant", "explicit", "doubly-exponential", "div-by-j", "root-scaled", "phi-powers"};
  std::uniform_int_distribution<int> pick(0, 5), small(1, 9);
  SequenceConfig s;
  s.kind = kinds[pick(rng)];
  s.value = std::to_string(small(rng)) + "/" + std::to_string(small(rng));
  if (s.kind == "explicit") {
    s.values = {json("3"), json::array({"1/2", "4"})};
  }
  s.d = small(rng) + 1;
  s.offset = small(rng) % 2;
  s.j = small(rng);
  if (s.kind == "root-scaled") s.poly = {"14", "-8", "1"};
  if (depth < 2 && pick(rng) % 2) s.base = std::make_shared<SequenceConfig>(random_sequence(rng, depth + 1));
  return s;
}

RunConfig random_config(std::mt19937_64& rng) {
  static const char* tasks[] = {"convergents", "enclose", "check-theorem1", "lemma1", "lemma2", "remark", "relation"};
  std::uniform_int_distribution<int> pick(0, 6), small(1, 50);
  RunConfig c;
  c.task = tasks[pick(rng)];
  if (small(rng) % 2) c.field = FieldConfig{{"-2", "0", "1"}, {"1", "3/2"}};
  for (int k = 0, m = small(rng) % 3; k < m; ++k) c.sequences.push_back(random_sequence(rng, 0));
  c.N = small(rng);
  c.precision = 64 * small(rng);
  c.height = std::to_string(small(rng) * 100);
  c.gamma = "1/" + std::to_string(small(rng) + 1);
  c.seed = rng();
  c.trials = small(rng);
  c.threads = static_cast<unsigned>(small(rng) % 4 + 1);
  c.condition5_mode = small(rng) % 2 ? "auto" : "real-part-sign";
  if (small(rng) % 3 == 0) c.tuples = {{{"2", "0"}, {"0", "-2"}}};
  if (small(rng) % 4 == 0) c.example = "ex1";
  if (small(rng) % 4 == 0) c.K = small(rng);
  if (small(rng) % 4 == 0) c.output = "out.json";
  c.format = small(rng) % 2 ? "json" : "text";
  return c;
}

int exit_of(const std::string& text) { return run(parse_run_config(text)).exit_code; }

}  // namespace

TEST(RunConfigFormat, RoundTripRandom) {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 300; ++t) {
    RunConfig c = random_config(rng);
    RunConfig back = parse_run_config(serialize_run_config(c));
    ASSERT_TRUE(back == c) << serialize_run_config(c);
    EXPECT_EQ(serialize_run_config(back), serialize_run_config(c));
  }
}

TEST(RunConfigFormat, RoundTripShippedConfigs) {
  for (const char* name : {"ex1_explicit.json", "ex3_threads.json", "convergents_sqrt2.json", "lemma2_tuples.json",
                           "lemma3_suite.json", "remark_short.json", "lemma1_pell_fib.json", "hanluc_fail.json"}) {
    RunConfig c = parse_run_config(slurp(kConfigDir + "/" + name));
    EXPECT_TRUE(parse_run_config(serialize_run_config(c)) == c) << name;
  }
}

TEST(RunConfigFormat, Rejections) {
  auto code = [](const std::string& text) {
    try {
      parse_run_config(text);
      return std::string("ok");
    } catch (const Error& e) {
      return std::string(to_string(e.code()));
    }
  };
  EXPECT_EQ(code("{"), "ConfigError");
  EXPECT_EQ(code("[]"), "ConfigError");
  EXPECT_EQ(code(R"({"task": "remark", "bogus": 1})"), "ConfigError");
  EXPECT_EQ(code(R"({"task": "remark", "N": "ten"})"), "ConfigError");
  EXPECT_EQ(code(R"({"field": {"minpoly": ["-2", "0", "1"], "root_interval": ["1"]}})"), "ConfigError");
  EXPECT_EQ(code(R"({"sequences": [{"kind": "constant", "colour": "red"}]})"), "ConfigError");
  EXPECT_EQ(code(R"({"tuples": [[["1"]]]})"), "ConfigError");
  EXPECT_EQ(code(R"({"task": "remark", "N": 10})"), "ok");
}

TEST(RunConfigFormat, RationalParsing) {
  EXPECT_EQ(parse_rational("3/6", "x"), mpq_class(1, 2));
  EXPECT_EQ(parse_rational("-7", "x"), mpq_class(-7));
  EXPECT_THROW(parse_rational("1/0", "x"), Error);
  EXPECT_THROW(parse_rational("0.5", "x"), Error);
  EXPECT_THROW(parse_rational("", "x"), Error);
  EXPECT_THROW(parse_integer("3/2", "x"), Error);
}

TEST(Run, ExitCodes) {
  EXPECT_EQ(exit_of(R"({"task": "check-theorem1", "field": {"minpoly": [], "root_interval": ["1", "2"]},
                        "sequences": [{"kind": "constant", "value": "2"}]})"),
            kExitConfig);
  EXPECT_EQ(exit_of(R"({"task": "check-named-example", "example": "ex1", "N": 3})"), kExitOk);
  EXPECT_EQ(exit_of(R"({"task": "check-named-example", "example": "hanluc", "N": 4})"), kExitFail);
  EXPECT_EQ(exit_of(R"({"task": "check-named-example", "example": "ex1", "gamma": "1"})"), kExitConfig);
  EXPECT_EQ(exit_of(R"({"task": "frobnicate"})"), kExitConfig);
  EXPECT_EQ(exit_of(R"({"task": "remark", "N": 50})"), kExitOk);
  EXPECT_EQ(exit_of(R"({"task": "lemma2", "tuples": [[["1", "0"], ["2", "0"]]]})"), kExitConfig);  // |z_0| < 2
  EXPECT_EQ(exit_of(R"({"task": "list"})"), kExitOk);
}

TEST(Run, PrecisionExhaustionMapsToThree) {
  EXPECT_EQ(exit_code_for(ErrorCode::IndeterminateAtPrecision), kExitPrecision);
  EXPECT_EQ(exit_code_for(ErrorCode::PrecisionInsufficient), kExitPrecision);
  EXPECT_EQ(exit_code_for(ErrorCode::ConfigError), kExitConfig);
}

TEST(Run, ReportEnvelope) {
  RunOutcome r = run(parse_run_config(R"({"task": "check-named-example", "example": "ex1", "N": 4, "precision": 256})"));
  EXPECT_EQ(r.report["tool"], "cfindep");
  EXPECT_EQ(r.report["version"], kToolVersion);
  EXPECT_EQ(r.report["result"]["overall"], "pass");
  EXPECT_EQ(r.report["result"]["label"], "prefix-consistent");
  EXPECT_FALSE(r.report.contains("timings"));
  for (const auto& c : r.report["result"]["conditions"]) {
    for (const auto& m : c["margin_series"]) {
      EXPECT_TRUE(m["value"].is_string());
      EXPECT_TRUE(m["error_bound"].is_string());
    }
  }
  EXPECT_NE(render_text(r.report).find("overall: pass"), std::string::npos);
}

TEST(Run, ByteIdenticalAcrossRunsAndThreads) {
  RunConfig c = parse_run_config(R"({"task": "check-named-example", "example": "ex2", "N": 5, "precision": 256})");
  std::string a = run(c).report.dump(2);
  c.threads = 4;
  std::string b = run(c).report.dump(2);
  EXPECT_EQ(a, b);
  RunConfig l = parse_run_config(R"({"task": "lemma3", "trials": 100, "seed": 9})");
  std::string x = run(l).report.dump(2);
  l.threads = 3;
  EXPECT_EQ(x, run(l).report.dump(2));
}
