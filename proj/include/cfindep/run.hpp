#pragma once

#include <chrono>
#include <sstream>

#include "cfindep/catalog.hpp"
#include "cfindep/config.hpp"
#include "cfindep/criteria.hpp"
#include "cfindep/decimal.hpp"
#include "cfindep/lemmas.hpp"
#include "cfindep/probe.hpp"

namespace cfindep {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode { kExitOk = 0, kExitFail = 1, kExitConfig = 2, kExitPrecision = 3 };

inline int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::IndeterminateAtPrecision:
    case ErrorCode::PrecisionInsufficient:
    case ErrorCode::PrecisionTooLow:
      return kExitPrecision;
    default:
      return kExitConfig;
  }
}

// Report pieces ------------------------------------------------------------------

inline json decimal_json(const DyadicInterval& x, int digits = 20) {
  DecimalValue d = to_decimal(x, digits);
  return json{{"value", d.value}, {"error_bound", d.error_bound}};
}

inline json witness_json(const std::optional<std::pair<long, long>>& w) {
  if (!w) return nullptr;
  return json{{"n", w->first}, {"j", w->second}};
}

inline json to_json_value(const ConditionResult& c) {
  json margins = json::array();
  for (const auto& m : c.margins) {
    json e = decimal_json(m.margin);
    e["n"] = m.n;
    if (m.j) e["j"] = m.j;
    margins.push_back(e);
  }
  return json{{"name", c.name},       {"statement", c.statement}, {"verdict", to_string(c.verdict)},
              {"verified_up_to", c.verified_up_to}, {"witness", witness_json(c.witness)},
              {"failing_index", c.witness ? json(c.witness->first) : json(nullptr)}, {"evidence", c.evidence},
              {"notes", c.notes},     {"margin_series", margins}};
}

inline json to_json_value(const HypothesisReport& r) {
  json conds = json::array();
  for (const auto& c : r.conditions) conds.push_back(to_json_value(c));
  return json{{"N", r.N},
              {"precision", r.precision},
              {"D", r.D},
              {"M", r.M},
              {"d", r.d},
              {"gamma", r.gamma.get_str()},
              {"condition5_mode_used", r.condition5_mode_used},
              {"label", r.label},
              {"overall", to_string(r.overall)},
              {"witness", witness_json(r.witness)},
              {"conditions", conds}};
}

inline json to_json_value(const RelationResult& r) {
  json j{{"status", to_string(r.status)}, {"height_bound", r.height_bound.get_str()}, {"precision", r.precision},
         {"lattice_dim", r.lattice_dim}, {"certified", r.certified}, {"min_gs_norm2", decimal_json(DyadicInterval::from_rational(r.min_gs_norm2, 64), 6)},
         {"disclaimer", kRelationDisclaimer}};
  json coeffs = json::array();
  for (const auto& c : r.coefficients) coeffs.push_back(c.get_str());
  j["coefficients"] = coeffs;
  json fc = json::array();
  for (const auto& a : r.field_coefficients) fc.push_back(a.to_string());
  j["field_coefficients"] = fc;
  j["residual"] = r.status == RelationStatus::Found ? decimal_json(r.residual, 6) : json(nullptr);
  return j;
}

inline json to_json_value(const SuiteResult& s) {
  json fails = json::array();
  for (long t : s.failures) fails.push_back(t);
  return json{{"lemma", s.lemma}, {"seed", s.seed},   {"trials", s.trials},         {"passed", s.passed},
              {"failures", fails}, {"worst", decimal_json(s.worst, 12)}, {"worst_trial", s.worst_trial},
              {"slack", "2^-" + std::to_string(kLemmaSlackBits)}};
}

// Task helpers ----------------------------------------------------------------------

namespace detail {

inline long or_default(long v, long fallback) { return v > 0 ? v : fallback; }

inline FieldPtr config_field(const RunConfig& c) { return c.field ? build_field(*c.field) : nullptr; }

inline std::vector<CFSpec> config_sequences(const RunConfig& c, const FieldPtr& k) {
  std::vector<CFSpec> out;
  for (const auto& s : c.sequences) out.push_back(build_sequence(s, k));
  return out;
}

/// Field of the configuration: explicit, else the field the sequences live in, else Q.
inline FieldPtr resolve_field(const FieldPtr& explicit_field, const std::vector<CFSpec>& seqs) {
  if (explicit_field) return explicit_field;
  for (const auto& s : seqs)
    if (s.field && s.field->degree() > 1) return s.field;
  return NumberField::rationals();
}

inline Thm1Config theorem_config(const RunConfig& c) {
  FieldPtr k = config_field(c);
  Thm1Config t;
  t.sequences = config_sequences(c, k);
  t.field = resolve_field(k, t.sequences);
  t.gamma = parse_rational(c.gamma, "gamma");
  t.condition5_mode = condition5_mode_from_string(c.condition5_mode);
  return t;
}

inline const CFSpec& first_sequence(const std::vector<CFSpec>& s, std::size_t need = 1) {
  if (s.size() < need) raise(ErrorCode::ConfigError, "task needs " + std::to_string(need) + " sequence(s)");
  return s.front();
}

inline std::vector<ComplexInterval> tuple_boxes(const std::vector<std::array<std::string, 2>>& t, long prec) {
  std::vector<ComplexInterval> z;
  for (const auto& e : t) {
    z.push_back(ComplexInterval::from_rationals(parse_rational(e[0], "tuple entry"), parse_rational(e[1], "tuple entry"), prec + 32));
  }
  if (z.empty()) raise(ErrorCode::ConfigError, "empty tuple");
  return z;
}

inline int verdict_exit(Verdict v) { return v == Verdict::Fail ? kExitFail : kExitOk; }

}  // namespace detail

struct RunOutcome {
  int exit_code = kExitOk;
  json report;
};

inline json task_convergents(const RunConfig& c, int& code) {
  FieldPtr k = detail::config_field(c);
  auto seqs = detail::config_sequences(c, k);
  const CFSpec& s = detail::first_sequence(seqs);
  long N = detail::or_default(c.N, 10);
  auto hist = convergents(cf_prefix(s, N));
  json rows = json::array();
  bool det_ok = true;
  for (const auto& h : hist) {
    bool ok = determinant_identity_holds(h);
    det_ok = det_ok && ok;
    rows.push_back({{"n", h.n}, {"p", s_to_string(h.p_cur)}, {"q", s_to_string(h.q_cur)}, {"determinant_identity", ok}});
  }
  code = det_ok ? kExitOk : kExitFail;
  return json{{"sequence", describe(s)}, {"N", N}, {"convergents", rows}, {"determinant_identity", det_ok}};
}

inline json task_enclose(const RunConfig& c, int& code) {
  FieldPtr k = detail::config_field(c);
  auto seqs = detail::config_sequences(c, k);
  const CFSpec& s = detail::first_sequence(seqs);
  long N = detail::or_default(c.N, 10), prec = detail::or_default(c.precision, kDefaultPrecision);
  CFValueEnclosure e = s.exact() ? enclose_value(cf_prefix(s, N + 1), N, prec) : [&] {
    std::vector<DyadicInterval> a{DyadicInterval(0)};
    for (long n = 1; n <= N + 1; ++n) a.push_back(quotient_enclosure(s, n, prec + 32));
    return enclose_value_intervals(a, N, prec);
  }();
  code = kExitOk;
  return json{{"sequence", describe(s)},
              {"order", e.order},
              {"precision", prec},
              {"value", decimal_json(e.value, 30)},
              {"width", decimal_json(e.value.width(), 6)},
              {"tail_bound_kind", e.tail_bound_kind},
              {"error_bound", decimal_json(e.error_bound, 6)}};
}

inline json task_check(const Thm1Config& t, long N, long prec, unsigned threads, int& code) {
  HypothesisReport r = check_all(t, N, prec, threads);
  code = detail::verdict_exit(r.overall);
  json seqs = json::array();
  for (const auto& s : t.sequences) seqs.push_back(describe(s));
  json out = to_json_value(r);
  out["sequences"] = seqs;
  out["field"] = t.field->degree() > 1 ? "Q(t), t root of " + t.field->minpoly().to_string() : "Q";
  return out;
}

inline json task_lemma1(const RunConfig& c, int& code) {
  FieldPtr k = detail::config_field(c);
  auto seqs = detail::config_sequences(c, k);
  detail::first_sequence(seqs, 2);
  long N = detail::or_default(c.N, 20), prec = detail::or_default(c.precision, kDefaultPrecision);
  RatioTrace t = lemma1_trace(seqs[0], seqs[1], N, prec);
  json ratios = json::array(), margins = json::array();
  for (std::size_t i = 0; i < t.indices.size(); ++i) {
    json r = decimal_json(t.ratios[i]);
    r["n"] = t.indices[i];
    ratios.push_back(r);
    json m = decimal_json(t.liminf_margin[i]);
    m["n"] = t.indices[i];
    margins.push_back(m);
  }
  code = kExitOk;  // a trace, no verdict
  return json{{"a", describe(seqs[0])}, {"b", describe(seqs[1])}, {"N", N},           {"exact", t.exact},
              {"increasing_from", t.increasing_from}, {"ratios", ratios}, {"liminf_margin", margins}};
}

template <class Check, class Suite>
json task_lemma_complex(const RunConfig& c, int& code, bool with_identity, Check check, Suite suite) {
  long prec = detail::or_default(c.precision, kDefaultPrecision);
  if (!c.tuples.empty()) {
    json rows = json::array();
    bool all = true;
    for (const auto& t : c.tuples) {
      LemmaCheck r = check(detail::tuple_boxes(t, prec), prec);
      all = all && r.verdict == Verdict::Pass;
      json row{{"verdict", to_string(r.verdict)}, {"value", decimal_json(r.value, 12)}, {"evidence", r.evidence}};
      if (with_identity) row["identity_gap"] = decimal_json(r.identity_gap, 6);
      rows.push_back(row);
    }
    code = all ? kExitOk : kExitFail;
    return json{{"lemma", c.task}, {"mode", "tuples"}, {"checks", rows}, {"verdict", all ? "pass" : "fail"}};
  }
  SuiteResult s = suite(c.trials, c.seed, c.threads);
  code = s.passed == s.trials ? kExitOk : kExitFail;
  json j = to_json_value(s);
  j["mode"] = "random";
  j["verdict"] = s.passed == s.trials ? "pass" : "fail";
  return j;
}

inline json task_remark(const RunConfig& c, int& code) {
  long N = detail::or_default(c.N, 2000);
  RemarkResult r = remark_counterexample(N);
  DyadicInterval limit = DyadicInterval::from_rational(mpq_class(1352, 100), 64);
  bool under = certainly_less(r.max_ratio, limit) && certainly_leq(r.bound, limit);
  code = (r.monotone && r.below_bound && under) ? kExitOk : kExitFail;
  json tail = json::array();
  for (long n = std::max(1L, N - 4); n <= N; ++n) {
    json e = decimal_json(r.ratios[static_cast<std::size_t>(n - 1)]);
    e["n"] = n;
    tail.push_back(e);
  }
  return json{{"N", N},
              {"max_ratio", decimal_json(r.max_ratio)},
              {"product_bound", decimal_json(r.bound, 12)},
              {"monotone", r.monotone},
              {"below_product", r.below_bound},
              {"below_13.52", under},
              {"last_ratios", tail}};
}

inline json task_relation(const RunConfig& c, int& code) {
  Thm1Config t = c.example.empty() ? detail::theorem_config(c) : named_example(c.example).config(c.K);
  long N = detail::or_default(c.N, 6), prec = detail::or_default(c.precision, 2048);
  ProbeResult p = probe_independence(t, N, parse_integer(c.height, "height"), prec);
  code = kExitOk;
  json vals = json::array();
  for (std::size_t i = 0; i + 1 < p.values.size(); ++i) {
    json v = decimal_json(p.values[i], 40);
    v["truncation"] = p.truncation[i];
    vals.push_back(v);
  }
  json out = to_json_value(p.relation);
  out["values"] = vals;
  out["field_degree"] = t.field->degree();
  out["label"] = "evidence, not proof";
  if (!c.example.empty()) out["example"] = c.example;
  return out;
}

inline json task_list() {
  json rows = json::array();
  for (const auto& e : list_named_examples()) {
    Thm1Config t = e.config();
    json row{{"name", e.name}, {"description", e.description}, {"field", e.field_description}, {"D", t.D()}, {"M", t.M()},
             {"d", t.d()},      {"default_N", e.default_N},     {"default_precision", e.default_precision}, {"note", e.note}};
    if (e.default_K) row["default_K"] = e.default_K;
    rows.push_back(row);
  }
  return json{{"examples", rows}};
}

/// Runs one task. Library errors become exit codes 2 (configuration) or 3 (precision).
inline RunOutcome run(const RunConfig& c) {
  RunOutcome out;
  // threads and output path do not affect results; leaving them out of the echo
  // keeps reports byte-identical across thread counts
  json echo = to_json_value(c);
  echo.erase("threads");
  echo.erase("output");
  out.report = json{{"tool", "cfindep"}, {"version", kToolVersion}, {"task", c.task}, {"config", echo}};
  auto t0 = std::chrono::steady_clock::now();
  try {
    c.validate();
    int code = kExitOk;
    json result;
    if (c.task == "convergents") {
      result = task_convergents(c, code);
    } else if (c.task == "enclose") {
      result = task_enclose(c, code);
    } else if (c.task == "check-theorem1") {
      Thm1Config t = detail::theorem_config(c);
      result = task_check(t, detail::or_default(c.N, 6), detail::or_default(c.precision, 512), c.threads, code);
    } else if (c.task == "check-named-example") {
      if (c.example.empty()) raise(ErrorCode::ConfigError, "check-named-example needs an example name");
      const NamedExample& e = named_example(c.example);
      Thm1Config t = e.config(c.K);
      t.gamma = parse_rational(c.gamma, "gamma");
      t.condition5_mode = condition5_mode_from_string(c.condition5_mode);
      result = task_check(t, detail::or_default(c.N, e.default_N), detail::or_default(c.precision, e.default_precision), c.threads, code);
      result["example"] = e.name;
    } else if (c.task == "lemma1") {
      result = task_lemma1(c, code);
    } else if (c.task == "lemma2") {
      result = task_lemma_complex(c, code, false, [](const auto& z, long p) { return lemma2_check(z, p); },
                                  [](long n, std::uint64_t s, unsigned th) { return lemma2_suite(n, s, th); });
    } else if (c.task == "lemma3") {
      result = task_lemma_complex(c, code, true, [](const auto& z, long p) { return lemma3_check(z, p); },
                                  [](long n, std::uint64_t s, unsigned th) { return lemma3_suite(n, s, th); });
    } else if (c.task == "remark") {
      result = task_remark(c, code);
    } else if (c.task == "relation") {
      result = task_relation(c, code);
    } else {
      result = task_list();
    }
    out.exit_code = code;
    out.report["result"] = result;
  } catch (const Error& e) {
    out.exit_code = exit_code_for(e.code());
    out.report["error"] = json{{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
  }
  out.report["exit_code"] = out.exit_code;
  if (c.timings) {
    out.report["timings"] = json{{"seconds", std::to_string(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count())}};
  }
  return out;
}

// Text rendering ------------------------------------------------------------------

inline std::string render_text(const json& report) {
  std::ostringstream os;
  os << "cfindep " << report.value("version", "") << " | task " << report.value("task", "") << "\n";
  if (report.contains("error")) {
    os << "error " << report["error"]["message"].get<std::string>() << "\n";
    return os.str();
  }
  const json& r = report["result"];
  if (r.contains("conditions")) {
    os << "D=" << r["D"] << " M=" << r["M"] << " d=" << r["d"] << " gamma=" << r["gamma"].get<std::string>() << " N=" << r["N"]
       << " precision=" << r["precision"] << "\n";
    for (const auto& c : r["conditions"]) {
      os << "  " << c["name"].get<std::string>() << ": " << c["verdict"].get<std::string>();
      if (!c["witness"].is_null()) os << " at n=" << c["witness"]["n"] << " j=" << c["witness"]["j"];
      if (!c["evidence"].get<std::string>().empty()) os << " (" << c["evidence"].get<std::string>() << ")";
      os << "\n";
    }
    os << "overall: " << r["overall"].get<std::string>() << " [" << r["label"].get<std::string>()
       << "], condition 5 via " << r["condition5_mode_used"].get<std::string>() << "\n";
  } else if (r.contains("examples")) {
    for (const auto& e : r["examples"]) {
      os << "  " << e["name"].get<std::string>() << "  D=" << e["D"] << " M=" << e["M"] << " d=" << e["d"] << "  "
         << e["description"].get<std::string>() << "\n";
    }
  } else {
    os << r.dump(2) << "\n";
  }
  os << "exit " << report["exit_code"] << "\n";
  return os.str();
}

}  // namespace cfindep
