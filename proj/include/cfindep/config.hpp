#pragma once

#include <json.hpp>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cfindep/error.hpp"
#include "cfindep/numfield.hpp"
#include "cfindep/sequences.hpp"

namespace cfindep {

using json = nlohmann::json;

inline mpq_class parse_rational(const std::string& s, const std::string& what) {
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0) raise(ErrorCode::ConfigError, what + ": '" + s + "' is not a rational num/den");
  if (q.get_den() == 0) raise(ErrorCode::ConfigError, what + ": zero denominator");
  q.canonicalize();
  return q;
}

inline mpz_class parse_integer(const std::string& s, const std::string& what) {
  mpz_class z;
  if (s.empty() || z.set_str(s, 10) != 0) raise(ErrorCode::ConfigError, what + ": '" + s + "' is not an integer");
  return z;
}

struct FieldConfig {
  std::vector<std::string> minpoly;         // integer coefficients, constant term first
  std::array<std::string, 2> root_interval;  // rational endpoints isolating theta

  bool operator==(const FieldConfig&) const = default;
};

struct SequenceConfig {
  std::string kind = "constant";
  std::string value = "1";       // constant, square-plus, one-plus-c-over-sqrt-n
  std::vector<json> values;      // explicit: "p/q" or a list of power-basis coordinates
  long d = 3;                    // doubly-exponential
  long offset = 0;
  long j = 1;                    // family index
  std::vector<std::string> poly;  // root-scaled
  std::shared_ptr<SequenceConfig> base;

  bool operator==(const SequenceConfig& o) const {
    bool bases = (!base && !o.base) || (base && o.base && *base == *o.base);
    return kind == o.kind && value == o.value && values == o.values && d == o.d && offset == o.offset && j == o.j && poly == o.poly &&
           bases;
  }
};

inline const std::vector<std::string>& task_names() {
  static const std::vector<std::string> names{"convergents", "enclose", "check-theorem1", "check-named-example", "lemma1",
                                              "lemma2",      "lemma3",  "remark",         "relation",            "list"};
  return names;
}

struct RunConfig {
  std::string task;
  std::optional<FieldConfig> field;
  std::vector<SequenceConfig> sequences;
  std::string example;  // named configuration
  long K = 0;           // catalog parameter, 0 = default
  long N = 0;           // 0 = task default
  long precision = 0;   // 0 = task default
  std::string height = "1000";
  std::string gamma = "1/2";
  std::uint64_t seed = 1;
  long trials = 1000;
  std::string condition5_mode = "auto";
  std::vector<std::vector<std::array<std::string, 2>>> tuples;  // lemma2/lemma3 inputs: (re, im) rationals
  unsigned threads = 1;
  std::string output;
  std::string format = "json";
  bool timings = false;

  bool operator==(const RunConfig&) const = default;

  void validate() const {
    if (std::find(task_names().begin(), task_names().end(), task) == task_names().end()) {
      raise(ErrorCode::ConfigError, "unknown task '" + task + "'");
    }
    if (format != "json" && format != "text") raise(ErrorCode::ConfigError, "format must be json or text");
    if (N < 0 || precision < 0 || K < 0) raise(ErrorCode::ConfigError, "N, precision and K must be non-negative");
    if (threads < 1) raise(ErrorCode::ConfigError, "threads must be >= 1");
    if (trials < 1) raise(ErrorCode::ConfigError, "trials must be >= 1");
    mpq_class g = parse_rational(gamma, "gamma");
    if (g <= 0 || g >= 1) raise(ErrorCode::ConfigError, "gamma must lie strictly inside (0, 1)");
    if (parse_integer(height, "height") < 1) raise(ErrorCode::ConfigError, "height must be >= 1");
    if (field) {
      if (field->minpoly.size() < 2) raise(ErrorCode::ConfigError, "minpoly needs at least two coefficients");
      for (const auto& c : field->minpoly) parse_integer(c, "minpoly coefficient");
    }
  }
};

// JSON ------------------------------------------------------------------------

inline json to_json_value(const FieldConfig& f) { return json{{"minpoly", f.minpoly}, {"root_interval", f.root_interval}}; }

inline json to_json_value(const SequenceConfig& s) {
  json j{{"kind", s.kind}};
  if (s.value != "1") j["value"] = s.value;
  if (!s.values.empty()) j["values"] = s.values;
  if (s.d != 3) j["d"] = s.d;
  if (s.offset != 0) j["offset"] = s.offset;
  if (s.j != 1) j["j"] = s.j;
  if (!s.poly.empty()) j["poly"] = s.poly;
  if (s.base) j["base"] = to_json_value(*s.base);
  return j;
}

inline json to_json_value(const RunConfig& c) {
  json j{{"task", c.task},   {"N", c.N},           {"precision", c.precision}, {"height", c.height},
         {"gamma", c.gamma}, {"seed", c.seed},     {"trials", c.trials},       {"condition5_mode", c.condition5_mode},
         {"threads", c.threads}, {"format", c.format}, {"timings", c.timings}};
  if (c.field) j["field"] = to_json_value(*c.field);
  if (!c.sequences.empty()) {
    j["sequences"] = json::array();
    for (const auto& s : c.sequences) j["sequences"].push_back(to_json_value(s));
  }
  if (!c.example.empty()) j["example"] = c.example;
  if (c.K != 0) j["K"] = c.K;
  if (!c.tuples.empty()) j["tuples"] = c.tuples;
  if (!c.output.empty()) j["output"] = c.output;
  return j;
}

namespace detail {

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    raise(ErrorCode::ConfigError, std::string("bad value for '") + key + "': " + e.what());
  }
}

/// Integers and rationals may be given as JSON numbers or strings.
inline std::string number_string(const json& v, const std::string& what) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  raise(ErrorCode::ConfigError, what + " must be an integer or a \"num/den\" string");
}

inline std::vector<std::string> string_list(const json& j, const char* key) {
  std::vector<std::string> out;
  if (!j.contains(key)) return out;
  if (!j.at(key).is_array()) raise(ErrorCode::ConfigError, std::string(key) + " must be a list");
  for (const auto& v : j.at(key)) out.push_back(number_string(v, key));
  return out;
}

inline void reject_unknown(const json& j, const std::vector<std::string>& known, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(known.begin(), known.end(), it.key()) == known.end()) {
      raise(ErrorCode::ConfigError, "unknown key '" + it.key() + "' in " + where);
    }
  }
}

}  // namespace detail

inline SequenceConfig sequence_config_from_json(const json& j) {
  if (!j.is_object()) raise(ErrorCode::ConfigError, "sequence entries must be objects");
  detail::reject_unknown(j, {"kind", "value", "values", "d", "offset", "j", "poly", "base"}, "sequence");
  SequenceConfig s;
  s.kind = detail::get_or<std::string>(j, "kind", "constant");
  if (j.contains("value")) s.value = detail::number_string(j.at("value"), "value");
  if (j.contains("values")) {
    if (!j.at("values").is_array()) raise(ErrorCode::ConfigError, "values must be a list");
    for (const auto& v : j.at("values")) s.values.push_back(v.is_number_integer() ? json(detail::number_string(v, "values")) : v);
  }
  s.d = detail::get_or<long>(j, "d", 3);
  s.offset = detail::get_or<long>(j, "offset", 0);
  s.j = detail::get_or<long>(j, "j", 1);
  s.poly = detail::string_list(j, "poly");
  if (j.contains("base")) s.base = std::make_shared<SequenceConfig>(sequence_config_from_json(j.at("base")));
  return s;
}

inline RunConfig run_config_from_json(const json& j) {
  if (!j.is_object()) raise(ErrorCode::ConfigError, "configuration must be an object");
  detail::reject_unknown(j,
                         {"task", "field", "sequences", "example", "K", "N", "precision", "height", "gamma", "seed", "trials",
                          "condition5_mode", "tuples", "threads", "output", "format", "timings"},
                         "configuration");
  RunConfig c;
  c.task = detail::get_or<std::string>(j, "task", "");
  if (j.contains("field")) {
    const json& f = j.at("field");
    if (!f.is_object()) raise(ErrorCode::ConfigError, "field must be an object");
    detail::reject_unknown(f, {"minpoly", "root_interval"}, "field");
    FieldConfig fc;
    fc.minpoly = detail::string_list(f, "minpoly");
    auto ri = detail::string_list(f, "root_interval");
    if (ri.size() != 2) raise(ErrorCode::ConfigError, "root_interval needs two endpoints");
    fc.root_interval = {ri[0], ri[1]};
    c.field = fc;
  }
  if (j.contains("sequences")) {
    if (!j.at("sequences").is_array()) raise(ErrorCode::ConfigError, "sequences must be a list");
    for (const auto& s : j.at("sequences")) c.sequences.push_back(sequence_config_from_json(s));
  }
  c.example = detail::get_or<std::string>(j, "example", "");
  c.K = detail::get_or<long>(j, "K", 0);
  c.N = detail::get_or<long>(j, "N", 0);
  c.precision = detail::get_or<long>(j, "precision", 0);
  if (j.contains("height")) c.height = detail::number_string(j.at("height"), "height");
  if (j.contains("gamma")) c.gamma = detail::number_string(j.at("gamma"), "gamma");
  c.seed = detail::get_or<std::uint64_t>(j, "seed", 1);
  c.trials = detail::get_or<long>(j, "trials", 1000);
  c.condition5_mode = detail::get_or<std::string>(j, "condition5_mode", "auto");
  if (j.contains("tuples")) {
    try {
      c.tuples = j.at("tuples").get<std::vector<std::vector<std::array<std::string, 2>>>>();
    } catch (const json::exception& e) {
      raise(ErrorCode::ConfigError, std::string("tuples must be lists of [re, im] strings: ") + e.what());
    }
  }
  c.threads = detail::get_or<unsigned>(j, "threads", 1);
  c.output = detail::get_or<std::string>(j, "output", "");
  c.format = detail::get_or<std::string>(j, "format", "json");
  c.timings = detail::get_or<bool>(j, "timings", false);
  return c;
}

inline RunConfig parse_run_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    raise(ErrorCode::ConfigError, std::string("config is not valid JSON: ") + e.what());
  }
  return run_config_from_json(j);
}

inline std::string serialize_run_config(const RunConfig& c) { return to_json_value(c).dump(2); }

// Building library objects ---------------------------------------------------

inline FieldPtr build_field(const FieldConfig& f) {
  std::vector<mpz_class> coeffs;
  for (const auto& c : f.minpoly) coeffs.push_back(parse_integer(c, "minpoly coefficient"));
  if (coeffs.size() < 2) raise(ErrorCode::ConfigError, "minpoly needs degree >= 1");
  mpq_class lo = parse_rational(f.root_interval[0], "root interval"), hi = parse_rational(f.root_interval[1], "root interval");
  if (lo > hi) raise(ErrorCode::ConfigError, "root interval endpoints out of order");
  DyadicInterval hint(from_rational(lo, 256, Round::Down), from_rational(hi, 256, Round::Up));
  return field_new(IntPoly(coeffs), hint);
}

inline Scalar build_scalar(const json& v, const FieldPtr& k) {
  if (v.is_string()) {
    mpq_class q = parse_rational(v.get<std::string>(), "sequence value");
    return k && k->degree() > 1 ? Scalar(FieldElement::rational(k, q)) : Scalar(q);
  }
  if (v.is_array()) {
    if (!k || k->degree() <= 1) raise(ErrorCode::ConfigError, "coordinate lists need a field of degree >= 2");
    std::vector<mpq_class> coords;
    for (const auto& c : v) coords.push_back(parse_rational(detail::number_string(c, "coordinate"), "coordinate"));
    if (static_cast<long>(coords.size()) != k->degree()) raise(ErrorCode::ConfigError, "coordinate list length must equal the field degree");
    return FieldElement(k, coords);
  }
  raise(ErrorCode::ConfigError, "sequence values must be \"num/den\" strings or coordinate lists");
}

inline CFSpec build_sequence(const SequenceConfig& s, const FieldPtr& k) {
  SeqKind kind = seq_kind_from_string(s.kind);
  auto base = [&] { return s.base ? build_sequence(*s.base, k) : seq_doubly_exponential(3); };
  switch (kind) {
    case SeqKind::Constant:
      return seq_constant(parse_rational(s.value, "value"));
    case SeqKind::Explicit: {
      std::vector<Scalar> v;
      for (const auto& x : s.values) v.push_back(build_scalar(x, k));
      if (v.empty()) raise(ErrorCode::ConfigError, "explicit sequence needs values");
      return seq_explicit(v);
    }
    case SeqKind::SquarePlus:
      return seq_square_plus(parse_rational(s.value, "value"));
    case SeqKind::OnePlusCOverSqrtN:
      return seq_one_plus_c_over_sqrt_n(parse_rational(s.value, "value"));
    case SeqKind::DoublyExponential:
      return seq_doubly_exponential(s.d, s.offset);
    case SeqKind::DivByJ:
      return seq_div_by_j(s.j, base());
    case SeqKind::RootScaled: {
      std::vector<mpz_class> c;
      for (const auto& x : s.poly) c.push_back(parse_integer(x, "poly coefficient"));
      return seq_root_scaled(IntPoly(c), s.j, base(), k && k->degree() > 1 ? k : nullptr);
    }
    case SeqKind::Harmonic:
      return seq_harmonic(s.j, base());
    case SeqKind::PrimePiPower:
      return seq_prime_pi_power(s.j, base());
    case SeqKind::DivisorSqrt2:
      return seq_divisor_sqrt2(base());
    case SeqKind::DivisorPlusOneSqrt2:
      return seq_divisor_plus_one_sqrt2(base());
    case SeqKind::PhiPowers:
      return seq_phi_powers(s.j, base());
    case SeqKind::SqrtJ:
      return seq_sqrt_j(s.j, k && k->degree() > 1 ? k : multiquadratic_field(s.j), base());
    case SeqKind::PrimeRatioSqrt2:
      return seq_prime_ratio_sqrt2();
    case SeqKind::PrimeScaledSqrt2:
      return seq_prime_scaled_sqrt2(base());
  }
  raise(ErrorCode::UnknownFamily, "unhandled kind " + s.kind);
}

}  // namespace cfindep
