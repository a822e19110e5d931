#pragma once

#include <future>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "cfindep/decimal.hpp"
#include "cfindep/sequences.hpp"

namespace cfindep {

enum class Verdict { Pass, Fail, Indeterminate };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::Indeterminate:
      return "indeterminate";
  }
  return "?";
}

enum class Condition5Mode { HouseHalf, RealPartSign, Auto };

inline std::string to_string(Condition5Mode m) {
  switch (m) {
    case Condition5Mode::HouseHalf:
      return "house-half";
    case Condition5Mode::RealPartSign:
      return "real-part-sign";
    case Condition5Mode::Auto:
      return "auto";
  }
  return "?";
}

inline Condition5Mode condition5_mode_from_string(const std::string& s) {
  if (s == "house-half") return Condition5Mode::HouseHalf;
  if (s == "real-part-sign") return Condition5Mode::RealPartSign;
  if (s == "auto") return Condition5Mode::Auto;
  raise(ErrorCode::ConfigError, "unknown condition-5 mode '" + s + "'");
}

/// d = max(2, D M - 1).
inline long compute_d(long D, long M) {
  if (D < 1 || M < 1) raise(ErrorCode::InvalidArgument, "compute_d needs D, M >= 1");
  return std::max(2L, D * M - 1);
}

struct Thm1Config {
  FieldPtr field;  // K; rational quotients are read in K
  mpq_class gamma{1, 2};
  std::vector<CFSpec> sequences;  // alpha_1 .. alpha_M
  Condition5Mode condition5_mode = Condition5Mode::Auto;
  std::vector<std::vector<int>> sign_table;  // e[j][sigma]; empty: read off at n = 1
  bool search_decompositions = true;
  long trailing_window = 0;  // 0: ceil(N/4)
  mpq_class growth_threshold = 2;

  long D() const { return field ? field->degree() : 1; }
  long M() const { return static_cast<long>(sequences.size()); }
  long d() const { return compute_d(D(), M()); }

  void validate() const {
    if (!field) raise(ErrorCode::ConfigError, "configuration has no field");
    if (sequences.empty()) raise(ErrorCode::ConfigError, "configuration has no sequences");
    if (gamma <= 0 || gamma >= 1) raise(ErrorCode::ConfigError, "gamma must lie strictly inside (0, 1)");
    for (const auto& s : sequences) {
      if (s.field && s.field->degree() > 1 && !s.field->same_as(*field)) {
        raise(ErrorCode::FieldMismatch, "sequence '" + describe(s) + "' lives in a different field");
      }
    }
    if (!sign_table.empty()) {
      if (static_cast<long>(sign_table.size()) != M()) raise(ErrorCode::ConfigError, "sign table needs one row per sequence");
      for (const auto& row : sign_table) {
        if (static_cast<long>(row.size()) != D()) raise(ErrorCode::ConfigError, "sign table rows need one entry per embedding");
      }
    }
  }
};

struct CheckOutcome {
  Verdict verdict = Verdict::Indeterminate;
  DyadicInterval margin;
  std::string evidence;
  long precision = 0;
  std::string note;
};

struct MarginPoint {
  long n = 0;
  long j = 0;  // 0 when the condition is not per sequence
  DyadicInterval margin;
};

struct ConditionResult {
  std::string name;
  std::string statement;
  Verdict verdict = Verdict::Pass;
  long verified_up_to = 0;
  std::vector<MarginPoint> margins;
  std::optional<std::pair<long, long>> witness;  // (n, j)
  std::string evidence;
  std::vector<std::string> notes;
};

struct HypothesisReport {
  long N = 0;
  long precision = 0;
  long D = 0, M = 0, d = 0;
  mpq_class gamma;
  std::string condition5_mode_used;
  std::vector<ConditionResult> conditions;
  Verdict overall = Verdict::Indeterminate;
  std::optional<std::pair<long, long>> witness;
  std::string label = "prefix-consistent";

  const ConditionResult* find(const std::string& name) const {
    for (const auto& c : conditions)
      if (c.name == name) return &c;
    return nullptr;
  }
};

namespace detail {

inline constexpr long kEscalationFactor = 8;

template <class F>
CheckOutcome escalate(F&& f, long prec, const std::string& what) {
  CheckOutcome last;
  for (long p = prec; p <= kEscalationFactor * prec; p *= 2) {
    last = f(p);
    last.precision = p;
    if (last.verdict != Verdict::Indeterminate) return last;
  }
  raise(ErrorCode::IndeterminateAtPrecision, what + " undecided up to " + std::to_string(kEscalationFactor * prec) + " bits: " + last.evidence);
}

inline std::string idx(long n, long j) { return "(" + std::to_string(n) + "," + std::to_string(j) + ")"; }

/// Conjugate enclosures per (field, precision), shared across checks.
inline const EmbeddingSet& embeddings_cached(const NumberField& k, long prec) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<EmbeddingSet>> cache;
  std::string key = k.minpoly().to_string() + "|" + k.root_hint().to_string() + "|" + std::to_string(prec);
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, std::make_unique<EmbeddingSet>(embeddings(k, prec))).first;
  return *it->second;
}

inline ComplexInterval sigma(const Thm1Config& cfg, const Scalar& x, std::size_t i, long prec) {
  if (!is_field(x)) return ComplexInterval(DyadicInterval::from_rational(std::get<mpq_class>(x), prec + 8));
  return sigma_eval(embeddings_cached(*cfg.field, prec), std::get<FieldElement>(x), i);
}

inline DyadicInterval scalar_house(const Thm1Config& cfg, const Scalar& x, long prec) {
  if (s_is_zero(x)) return DyadicInterval(0);
  if (!is_field(x)) return iv_abs(DyadicInterval::from_rational(std::get<mpq_class>(x), prec + 8));
  DyadicInterval best;
  for (long i = 0; i < cfg.D(); ++i) {
    DyadicInterval m = c_abs(sigma(cfg, x, static_cast<std::size_t>(i), prec), prec);
    best = i == 0 ? m : iv_max(best, m);
  }
  return best;
}

inline bool scalar_is_algebraic_integer(const Scalar& x) {
  if (!is_field(x)) return std::get<mpq_class>(x).get_den() == 1;
  return is_algebraic_integer(std::get<FieldElement>(x));
}

/// x^g for x >= 0 (the lower endpoint may touch 0).
inline DyadicInterval pow_nonneg(const DyadicInterval& x, const mpq_class& g, long prec) {
  DyadicInterval ge = DyadicInterval::from_rational(g, prec);
  if (x.hi().sign() <= 0) return DyadicInterval(0);
  if (x.lo().sign() > 0) return iv_pow_pos(x, ge, prec);
  return DyadicInterval(Dyadic(0), iv_pow_pos(DyadicInterval(x.hi()), ge, prec).hi());
}

/// log2 of a value known to be >= 1 (clamped at 0 from below).
inline DyadicInterval log2_at_least_one(const DyadicInterval& a, long prec) {
  if (a.lo().sign() <= 0) raise(ErrorCode::InvalidArgument, "log2 of a non-positive enclosure");
  DyadicInterval l = iv_log2(a, prec);
  if (l.lo().sign() < 0) l = DyadicInterval(Dyadic(0), max(l.hi(), Dyadic(0)));
  return l;
}

/// d^(n gamma) = 2^(n gamma log2 d).
inline DyadicInterval d_power(long d, long n, const mpq_class& gamma, long prec) {
  DyadicInterval e = iv_mul(DyadicInterval::from_rational(mpq_class(n) * gamma, prec), iv_log2(DyadicInterval(d), prec), prec);
  return iv_exp2(e, prec);
}

/// log2 max(2^((log2 a)^gamma), 2^(d^(n gamma))) = max((log2 a)^gamma, d^(n gamma)).
inline DyadicInterval threshold_log2(const Thm1Config& cfg, long n, const DyadicInterval& a, long prec) {
  DyadicInterval la = log2_at_least_one(a, prec);
  return iv_max(pow_nonneg(la, cfg.gamma, prec), d_power(cfg.d(), n, cfg.gamma, prec));
}

inline Scalar quotient_in(const Thm1Config& cfg, long n, long j) {
  if (j < 1 || j > cfg.M()) raise(ErrorCode::InvalidArgument, "sequence index out of range");
  return quotient(cfg.sequences[static_cast<std::size_t>(j - 1)], n);
}

inline DyadicInterval enclose_quotient(const Thm1Config& cfg, long n, long j, long prec) {
  return quotient_enclosure(cfg.sequences[static_cast<std::size_t>(j - 1)], n, prec);
}

inline Scalar decomposed_value(const Decomposition& dc) {
  return s_div(s_add(s_mul(mpq_class(dc.S), dc.b), dc.c), dc.d);
}

inline std::string decomposition_string(const Decomposition& dc) {
  return "S=" + dc.S.get_str() + ", b=" + s_to_string(dc.b) + ", c=" + s_to_string(dc.c) + ", d=" + s_to_string(dc.d);
}

/// log2 of the largest house among b, c, d (nullopt when all vanish).
inline std::optional<DyadicInterval> max_log2_house(const Thm1Config& cfg, const Decomposition& dc, long prec) {
  std::optional<DyadicInterval> best;
  for (const Scalar* x : {&dc.b, &dc.c, &dc.d}) {
    if (s_is_zero(*x)) continue;
    DyadicInterval h = scalar_house(cfg, *x, prec);
    if (!h.positive()) return DyadicInterval(Dyadic(-prec), max(iv_log2(DyadicInterval(h.hi()), prec).hi(), Dyadic(-prec)));
    DyadicInterval l = iv_log2(h, prec);
    best = best ? iv_max(*best, l) : l;
  }
  return best;
}

}  // namespace detail

/// Decompositions a = (S b + 0) / d with d ranging over small algebraic integers of K and
/// S the content of a d in the power basis; the first whose houses meet the bound wins.
inline std::optional<Decomposition> balanced_decomposition(const Thm1Config& cfg, const FieldElement& a,
                                                           const DyadicInterval& bound_log2, long prec) {
  long D = a.degree();
  long range = D <= 2 ? 4 : (D <= 4 ? 2 : 1);
  std::vector<std::vector<long>> cands;
  std::vector<long> c(static_cast<std::size_t>(D), -range);
  while (true) {
    bool nonzero = std::any_of(c.begin(), c.end(), [](long v) { return v != 0; });
    if (nonzero) cands.push_back(c);
    std::size_t k = 0;
    while (k < c.size() && c[k] == range) c[k++] = -range;
    if (k == c.size()) break;
    ++c[k];
  }
  auto weight = [](const std::vector<long>& v) {
    long s = 0;
    for (long x : v) s += std::labs(x);
    return s;
  };
  std::stable_sort(cands.begin(), cands.end(), [&](const auto& x, const auto& y) { return weight(x) < weight(y); });
  for (const auto& cand : cands) {
    std::vector<mpq_class> coords(cand.begin(), cand.end());
    FieldElement d(a.field(), coords);
    FieldElement x = a * d;
    mpz_class g = 0;
    bool integral = true;
    for (const auto& v : x.coords()) {
      if (v.get_den() != 1) {
        integral = false;
        break;
      }
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
    }
    if (!integral || g == 0) continue;
    FieldElement b = mpq_class(1, g) * x;
    Decomposition dc{g, b, FieldElement::rational(a.field(), 0), d};
    auto h = detail::max_log2_house(cfg, dc, prec);
    if (h && certainly_leq(*h, bound_log2)) return dc;
  }
  return std::nullopt;
}

struct ResolvedDecomposition {
  Decomposition decomposition;
  bool searched = false;
};

/// The rule decomposition, replaced by a balanced search when the rule misses the house bound.
inline std::optional<ResolvedDecomposition> resolve_decomposition(const Thm1Config& cfg, long n, long j, long prec) {
  auto rule = decomposition(cfg.sequences[static_cast<std::size_t>(j - 1)], n);
  if (!rule) return std::nullopt;
  if (!cfg.search_decompositions) return ResolvedDecomposition{*rule, false};
  Scalar a = detail::quotient_in(cfg, n, j);
  DyadicInterval a_enc = detail::enclose_quotient(cfg, n, j, prec);
  if (!a_enc.positive()) return ResolvedDecomposition{*rule, false};
  DyadicInterval bound = detail::threshold_log2(cfg, n, a_enc, prec);
  auto h = detail::max_log2_house(cfg, *rule, prec);
  if (!h || certainly_leq(*h, bound) || !is_field(a)) return ResolvedDecomposition{*rule, false};
  if (auto alt = balanced_decomposition(cfg, std::get<FieldElement>(a), bound, prec)) return ResolvedDecomposition{*alt, true};
  return ResolvedDecomposition{*rule, false};
}

/// a_{n,j} = (S b + c)/d >= 1 with b, c, d algebraic integers.
inline CheckOutcome check_decomposition(const Thm1Config& cfg, long n, long j, long prec = kDefaultPrecision) {
  auto res = resolve_decomposition(cfg, n, j, prec);
  Scalar a = detail::quotient_in(cfg, n, j);
  return detail::escalate(
      [&](long p) {
        CheckOutcome o;
        o.margin = iv_sub(detail::enclose_quotient(cfg, n, j, p), DyadicInterval(1), p);
        if (!res) {
          o.verdict = Verdict::Fail;
          o.evidence = "no decomposition available for a" + detail::idx(n, j);
          return o;
        }
        const Decomposition& dc = res->decomposition;
        if (res->searched) o.note = "balanced decomposition " + detail::decomposition_string(dc);
        if (s_is_zero(dc.d) || !s_equal(detail::decomposed_value(dc), a)) {
          o.verdict = Verdict::Fail;
          o.evidence = "(S b + c)/d != a" + detail::idx(n, j) + " for " + detail::decomposition_string(dc);
        } else if (!detail::scalar_is_algebraic_integer(dc.b) || !detail::scalar_is_algebraic_integer(dc.c) ||
                   !detail::scalar_is_algebraic_integer(dc.d)) {
          o.verdict = Verdict::Fail;
          o.evidence = "b, c, d not all algebraic integers at " + detail::idx(n, j);
        } else if (o.margin.lo().sign() >= 0) {
          o.verdict = Verdict::Pass;
        } else if (o.margin.hi().sign() < 0) {
          o.verdict = Verdict::Fail;
          o.evidence = "a" + detail::idx(n, j) + " - 1 = " + decimal_string(o.margin) + " < 0";
        } else {
          o.evidence = "a" + detail::idx(n, j) + " - 1 straddles 0";
        }
        return o;
      },
      prec, "a" + detail::idx(n, j) + " >= 1");
}

/// house(1/a_{n,j}) >= 1/2.
inline CheckOutcome check_inverse_house(const Thm1Config& cfg, long n, long j, long prec = kDefaultPrecision) {
  Scalar a = detail::quotient_in(cfg, n, j);
  return detail::escalate(
      [&](long p) {
        CheckOutcome o;
        // house(1/a) = 1 / min_sigma |sigma(a)|
        DyadicInterval least;
        for (long i = 0; i < (is_field(a) ? cfg.D() : 1); ++i) {
          DyadicInterval m = c_abs(detail::sigma(cfg, a, static_cast<std::size_t>(i), p), p);
          least = i == 0 ? m : iv_min(least, m);
        }
        if (least.contains_zero()) {
          o.margin = DyadicInterval(Dyadic(-1), Dyadic(1));
          o.evidence = "conjugate of a" + detail::idx(n, j) + " not separated from 0";
          return o;
        }
        o.margin = iv_sub(iv_inv(least, p), DyadicInterval(Dyadic(1, -1)), p);
        if (o.margin.lo().sign() >= 0) {
          o.verdict = Verdict::Pass;
        } else if (o.margin.hi().sign() < 0) {
          o.verdict = Verdict::Fail;
          o.evidence = "house(1/a" + detail::idx(n, j) + ") - 1/2 = " + decimal_string(o.margin) + " < 0";
        }
        return o;
      },
      prec, "house(1/a" + detail::idx(n, j) + ") >= 1/2");
}

/// house(b), house(c), house(d) <= max(2^((log2 a_{n,j})^gamma), 2^(d^(n gamma))).
inline CheckOutcome check_house_conditions(const Thm1Config& cfg, long n, long j, long prec = kDefaultPrecision) {
  auto res = resolve_decomposition(cfg, n, j, prec);
  return detail::escalate(
      [&](long p) {
        CheckOutcome o;
        DyadicInterval a = detail::enclose_quotient(cfg, n, j, p);
        if (!a.positive()) {
          o.margin = DyadicInterval(0);
          o.evidence = "a" + detail::idx(n, j) + " not certified positive";
          return o;
        }
        DyadicInterval bound = detail::threshold_log2(cfg, n, a, p);
        if (!res) {
          o.verdict = Verdict::Fail;
          o.margin = bound;
          o.evidence = "no decomposition available for a" + detail::idx(n, j);
          return o;
        }
        if (res->searched) o.note = "balanced decomposition " + detail::decomposition_string(res->decomposition);
        auto h = detail::max_log2_house(cfg, res->decomposition, p);
        o.margin = h ? iv_sub(bound, *h, p) : bound;
        if (o.margin.lo().sign() >= 0) {
          o.verdict = Verdict::Pass;
        } else if (o.margin.hi().sign() < 0) {
          o.verdict = Verdict::Fail;
          o.evidence = "log2 max(house b, c, d) exceeds the bound at " + detail::idx(n, j) + " by " + decimal_string(-o.margin);
        }
        return o;
      },
      prec, "house bounds at " + detail::idx(n, j));
}

/// Sign pattern e[j][sigma] read off at index n.
inline std::vector<std::vector<int>> infer_sign_table(const Thm1Config& cfg, long n, long prec = kDefaultPrecision) {
  std::vector<std::vector<int>> e;
  for (long j = 1; j <= cfg.M(); ++j) {
    Scalar a = detail::quotient_in(cfg, n, j);
    std::vector<int> row;
    for (long i = 0; i < cfg.D(); ++i) {
      int s = 0;
      for (long p = prec; p <= detail::kEscalationFactor * prec && s == 0; p *= 2) {
        s = detail::sigma(cfg, a, static_cast<std::size_t>(is_field(a) ? i : 0), p).re().certain_sign();
      }
      row.push_back(s < 0 ? 1 : 0);
    }
    e.push_back(row);
  }
  return e;
}

/// (-1)^e Re(sigma a_{n,j}) >= max(2^((log2 a_{n,1})^gamma), 2^(d^(n gamma)))^-1 for every sigma.
/// Margin: log2 of the signed real part plus the log2 threshold (negative real parts are reported as is).
inline CheckOutcome check_condition10(const Thm1Config& cfg, long n, long j, const std::vector<std::vector<int>>& e,
                                      long prec = kDefaultPrecision) {
  Scalar a = detail::quotient_in(cfg, n, j);
  return detail::escalate(
      [&](long p) {
        CheckOutcome o;
        DyadicInterval a1 = detail::enclose_quotient(cfg, n, 1, p);
        if (!a1.positive()) {
          o.margin = DyadicInterval(0);
          o.evidence = "a" + detail::idx(n, 1) + " not certified positive";
          return o;
        }
        DyadicInterval L1 = detail::threshold_log2(cfg, n, a1, p);
        bool undecided = false;
        std::optional<DyadicInterval> worst;
        for (long i = 0; i < cfg.D(); ++i) {
          DyadicInterval re = detail::sigma(cfg, a, static_cast<std::size_t>(is_field(a) ? i : 0), p).re();
          if (e[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i)]) re = -re;
          DyadicInterval m;
          if (re.positive()) {
            m = iv_add(iv_log2(re, p), L1, p);
          } else {
            m = re;
          }
          if (m.contains_zero() && !(m.lo().sign() == 0)) undecided = true;
          if (!worst || cmp(m.lo(), worst->lo()) < 0) worst = m;
          if (m.hi().sign() < 0 && o.evidence.empty()) {
            o.evidence = "embedding " + std::to_string(i) + ": (-1)^e Re(sigma a" + detail::idx(n, j) + ") violates the bound, margin " +
                         decimal_string(m);
          }
        }
        o.margin = *worst;
        if (!o.evidence.empty()) {
          o.verdict = Verdict::Fail;
        } else if (!undecided) {
          o.verdict = Verdict::Pass;
        } else {
          o.evidence = "sign of the real-part margin undecided at " + detail::idx(n, j);
        }
        return o;
      },
      prec, "real-part condition at " + detail::idx(n, j));
}

/// a_{n,1} < max(a_{n,M} 2^((log2 a_{n,M})^gamma), 2^(d^(n gamma))), compared in log2.
inline CheckOutcome check_interleaving(const Thm1Config& cfg, long n, long prec = kDefaultPrecision) {
  return detail::escalate(
      [&](long p) {
        CheckOutcome o;
        DyadicInterval a1 = detail::enclose_quotient(cfg, n, 1, p), aM = detail::enclose_quotient(cfg, n, cfg.M(), p);
        if (!a1.positive() || !aM.positive()) {
          o.margin = DyadicInterval(0);
          o.evidence = "quotients not certified positive at n=" + std::to_string(n);
          return o;
        }
        DyadicInterval l1 = iv_log2(a1, p), lM = detail::log2_at_least_one(aM, p);
        DyadicInterval rhs = iv_max(iv_add(lM, detail::pow_nonneg(lM, cfg.gamma, p), p), detail::d_power(cfg.d(), n, cfg.gamma, p));
        o.margin = iv_sub(rhs, l1, p);
        if (o.margin.lo().sign() > 0) {
          o.verdict = Verdict::Pass;
        } else if (o.margin.hi().sign() <= 0) {
          o.verdict = Verdict::Fail;
          o.evidence = "log2 a" + detail::idx(n, 1) + " exceeds log2 of the right side by " + decimal_string(-o.margin);
        } else {
          o.evidence = "interleaving margin straddles 0 at n=" + std::to_string(n);
        }
        return o;
      },
      prec, "interleaving at n=" + std::to_string(n));
}

struct SeriesResult {
  std::vector<DyadicInterval> series;  // index n-1
  Verdict verdict = Verdict::Indeterminate;
  DyadicInterval window_min;
  std::vector<long> records;  // growth: indices of strict running maxima
  std::string note;
};

namespace detail {

inline long window_size(const Thm1Config& cfg, long N) {
  return cfg.trailing_window > 0 ? std::min(cfg.trailing_window, N) : std::max(1L, (N + 3) / 4);
}

inline bool certainly_decreasing(const std::vector<DyadicInterval>& s, long from, long to) {
  for (long k = from + 1; k <= to; ++k) {
    if (!certainly_less(s[static_cast<std::size_t>(k)], s[static_cast<std::size_t>(k - 1)])) return false;
  }
  return true;
}

}  // namespace detail

/// m_n = sqrt(n) (a_{n,j}/a_{n,j+1} - 1) for n <= N.
inline SeriesResult ratio_margin(const Thm1Config& cfg, long j, long N, long prec = kDefaultPrecision) {
  if (j < 1 || j >= cfg.M()) raise(ErrorCode::InvalidArgument, "ratio margin needs 1 <= j <= M-1");
  SeriesResult r;
  for (long n = 1; n <= N; ++n) {
    const CFSpec& s1 = cfg.sequences[static_cast<std::size_t>(j - 1)];
    const CFSpec& s2 = cfg.sequences[static_cast<std::size_t>(j)];
    DyadicInterval excess;
    if (s1.exact() && s2.exact()) {
      Scalar ratio = s_div(quotient(s1, n), quotient(s2, n));
      excess = s_enclose(s_sub(ratio, mpq_class(1)), prec);
    } else {
      excess = iv_sub(iv_div(quotient_enclosure(s1, n, prec), quotient_enclosure(s2, n, prec), prec), DyadicInterval(1), prec);
    }
    r.series.push_back(iv_mul(iv_sqrt(DyadicInterval(n), prec), excess, prec));
  }
  long w = detail::window_size(cfg, N);
  long first = N - w;
  r.window_min = r.series[static_cast<std::size_t>(first)];
  bool all_nonpositive = true;
  for (long k = first; k < N; ++k) {
    const auto& v = r.series[static_cast<std::size_t>(k)];
    if (cmp(v.lo(), r.window_min.lo()) < 0) r.window_min = v;
    if (v.hi().sign() > 0) all_nonpositive = false;
  }
  long mono_from = N - std::max(1L, (N + 1) / 2);
  bool decreasing = (N - mono_from) >= 3 && detail::certainly_decreasing(r.series, mono_from, N - 1);
  if (all_nonpositive) {
    r.verdict = Verdict::Fail;
    r.note = "trailing window is <= 0";
  } else if (r.window_min.positive() && !decreasing) {
    r.verdict = Verdict::Pass;
  } else {
    r.verdict = Verdict::Indeterminate;
    r.note = decreasing ? "positive but strictly decreasing over the last half: trend toward 0" : "trailing window touches 0";
  }
  return r;
}

/// g_n = a_{n,j}^(1/d^n), computed as 2^(log2 a / d^n).
inline SeriesResult growth_margin(const Thm1Config& cfg, long j, long N, long prec = kDefaultPrecision) {
  SeriesResult r;
  mpz_class dn = 1;
  for (long n = 1; n <= N; ++n) {
    dn *= cfg.d();
    DyadicInterval a = detail::enclose_quotient(cfg, n, j, prec);
    DyadicInterval l = detail::log2_at_least_one(a, prec);
    r.series.push_back(iv_exp2(iv_div(l, DyadicInterval(Dyadic(dn, 0)), prec), prec));
  }
  DyadicInterval best;
  for (long n = 1; n <= N; ++n) {
    const auto& g = r.series[static_cast<std::size_t>(n - 1)];
    if (n == 1 || cmp(g.lo(), best.hi()) > 0) {
      r.records.push_back(n);
      best = g;
    }
  }
  long w = detail::window_size(cfg, N);
  long first = N - w + 1;  // 1-based
  r.window_min = r.series[static_cast<std::size_t>(first - 1)];
  for (long k = first; k <= N; ++k) r.window_min = iv_min(r.window_min, r.series[static_cast<std::size_t>(k - 1)]);
  DyadicInterval T = DyadicInterval::from_rational(cfg.growth_threshold, prec);
  long last_record = r.records.back();
  bool below_record = true;
  for (long k = first; k <= N; ++k)
    if (k == last_record || !certainly_less(r.series[static_cast<std::size_t>(k - 1)], best)) below_record = false;
  if (certainly_less(T, best) && last_record >= first && r.records.size() >= 2) {
    r.verdict = Verdict::Pass;
  } else if (below_record && w >= 2 && detail::certainly_decreasing(r.series, first - 1, N - 1)) {
    r.verdict = Verdict::Fail;
    r.note = "decreasing below an earlier maximum: finite limsup suspected";
  } else {
    r.verdict = Verdict::Indeterminate;
    r.note = "no strict growth past the threshold in the trailing window";
  }
  return r;
}

namespace detail {

struct IndexResults {
  std::vector<CheckOutcome> decomposition, inverse_house, house, cond10;
  CheckOutcome interleaving;
  std::vector<std::string> errors;
};

template <class F>
CheckOutcome guarded(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::IndeterminateAtPrecision && e.code() != ErrorCode::PrecisionInsufficient) throw;
    CheckOutcome o;
    o.verdict = Verdict::Indeterminate;
    o.margin = DyadicInterval(Dyadic(-1), Dyadic(1));
    o.evidence = e.what();
    return o;
  }
}

inline void absorb(ConditionResult& c, long n, long j, const CheckOutcome& o) {
  c.margins.push_back({n, j, o.margin});
  if (!o.note.empty()) c.notes.push_back(idx(n, j) + ": " + o.note);
  if (o.verdict == Verdict::Fail && c.verdict != Verdict::Fail) {
    c.verdict = Verdict::Fail;
    c.witness = std::make_pair(n, j);
    c.evidence = o.evidence;
  } else if (o.verdict == Verdict::Indeterminate && c.verdict == Verdict::Pass) {
    c.verdict = Verdict::Indeterminate;
    c.witness = std::make_pair(n, j);
    c.evidence = o.evidence;
  }
}

inline Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::Fail || b == Verdict::Fail) return Verdict::Fail;
  if (a == Verdict::Indeterminate || b == Verdict::Indeterminate) return Verdict::Indeterminate;
  return Verdict::Pass;
}

}  // namespace detail

/// Runs every hypothesis check for n <= N and aggregates them.
inline HypothesisReport check_all(const Thm1Config& cfg, long N, long prec = kDefaultPrecision, unsigned threads = 1) {
  cfg.validate();
  if (N < 1) raise(ErrorCode::InvalidArgument, "N must be >= 1");
  HypothesisReport rep;
  rep.N = N;
  rep.precision = prec;
  rep.D = cfg.D();
  rep.M = cfg.M();
  rep.d = cfg.d();
  rep.gamma = cfg.gamma;
  long M = cfg.M();

  std::vector<std::vector<int>> e = cfg.sign_table;
  bool need10 = cfg.condition5_mode != Condition5Mode::HouseHalf;
  bool need5 = cfg.condition5_mode != Condition5Mode::RealPartSign;
  if (need10 && e.empty()) e = infer_sign_table(cfg, 1, prec);

  auto run_index = [&](long n) {
    detail::IndexResults r;
    for (long j = 1; j <= M; ++j) {
      r.decomposition.push_back(detail::guarded([&] { return check_decomposition(cfg, n, j, prec); }));
      r.house.push_back(detail::guarded([&] { return check_house_conditions(cfg, n, j, prec); }));
      if (need5) r.inverse_house.push_back(detail::guarded([&] { return check_inverse_house(cfg, n, j, prec); }));
      if (need10) r.cond10.push_back(detail::guarded([&] { return check_condition10(cfg, n, j, e, prec); }));
    }
    r.interleaving = detail::guarded([&] { return check_interleaving(cfg, n, prec); });
    return r;
  };

  std::vector<detail::IndexResults> per(static_cast<std::size_t>(N));
  if (threads <= 1) {
    for (long n = 1; n <= N; ++n) per[static_cast<std::size_t>(n - 1)] = run_index(n);
  } else {
    for (long start = 1; start <= N; start += static_cast<long>(threads)) {
      std::vector<std::future<detail::IndexResults>> fut;
      for (long n = start; n < start + static_cast<long>(threads) && n <= N; ++n) fut.push_back(std::async(std::launch::async, run_index, n));
      for (std::size_t k = 0; k < fut.size(); ++k) per[static_cast<std::size_t>(start - 1) + k] = fut[k].get();
    }
  }

  ConditionResult dec{"decomposition", "a_{n,j} = (S b + c)/d >= 1, b, c, d algebraic integers"};
  ConditionResult inv{"inverse-house", "house(1/a_{n,j}) >= 1/2"};
  ConditionResult rps{"real-part-sign", "(-1)^e Re(sigma a_{n,j}) >= max(2^((log2 a_{n,1})^gamma), 2^(d^(n gamma)))^-1, e independent of n"};
  ConditionResult inter{"interleaving", "a_{n,1} < max(a_{n,M} 2^((log2 a_{n,M})^gamma), 2^(d^(n gamma)))"};
  ConditionResult hb{"house-bounds", "house(b), house(c), house(d) <= max(2^((log2 a_{n,j})^gamma), 2^(d^(n gamma)))"};
  for (long n = 1; n <= N; ++n) {
    const auto& r = per[static_cast<std::size_t>(n - 1)];
    for (long j = 1; j <= M; ++j) {
      auto k = static_cast<std::size_t>(j - 1);
      detail::absorb(dec, n, j, r.decomposition[k]);
      detail::absorb(hb, n, j, r.house[k]);
      if (need5) detail::absorb(inv, n, j, r.inverse_house[k]);
      if (need10) detail::absorb(rps, n, j, r.cond10[k]);
    }
    detail::absorb(inter, n, 0, r.interleaving);
  }
  for (auto* c : {&dec, &inv, &rps, &inter, &hb}) c->verified_up_to = N;
  if (need10) {
    std::string row;
    for (const auto& er : e) {
      row += "[";
      for (std::size_t i = 0; i < er.size(); ++i) row += (i ? "," : "") + std::to_string(er[i]);
      row += "]";
    }
    rps.notes.insert(rps.notes.begin(), "sign table e[j][sigma] = " + row + (cfg.sign_table.empty() ? " (read off at n=1)" : ""));
  }

  Verdict cond5 = Verdict::Pass;
  switch (cfg.condition5_mode) {
    case Condition5Mode::HouseHalf:
      cond5 = inv.verdict;
      rep.condition5_mode_used = "house-half";
      break;
    case Condition5Mode::RealPartSign:
      cond5 = rps.verdict;
      rep.condition5_mode_used = "real-part-sign";
      break;
    case Condition5Mode::Auto:
      if (inv.verdict == Verdict::Pass) {
        cond5 = Verdict::Pass;
        rep.condition5_mode_used = "house-half";
      } else if (rps.verdict == Verdict::Pass) {
        cond5 = Verdict::Pass;
        rep.condition5_mode_used = "real-part-sign";
      } else {
        cond5 = (inv.verdict == Verdict::Fail && rps.verdict == Verdict::Fail) ? Verdict::Fail : Verdict::Indeterminate;
        rep.condition5_mode_used = "none";
      }
      break;
  }

  rep.conditions.push_back(dec);
  if (need5) rep.conditions.push_back(inv);
  if (need10) rep.conditions.push_back(rps);
  rep.conditions.push_back(inter);
  rep.conditions.push_back(hb);

  Verdict overall = detail::combine(dec.verdict, cond5);
  overall = detail::combine(overall, inter.verdict);
  overall = detail::combine(overall, hb.verdict);

  for (long j = 1; j < M; ++j) {
    SeriesResult s = ratio_margin(cfg, j, N, prec);
    ConditionResult c{"ratio-" + std::to_string(j), "liminf sqrt(n) (a_{n,j}/a_{n,j+1} - 1) > 0"};
    c.verdict = s.verdict;
    c.verified_up_to = N;
    for (long n = 1; n <= N; ++n) c.margins.push_back({n, j, s.series[static_cast<std::size_t>(n - 1)]});
    c.notes.push_back("trailing-window min " + decimal_string(s.window_min));
    if (!s.note.empty()) c.notes.push_back(s.note);
    if (s.verdict != Verdict::Pass) {
      c.witness = std::make_pair(N, j);
      c.evidence = s.note;
    }
    overall = detail::combine(overall, c.verdict);
    rep.conditions.push_back(c);
  }

  ConditionResult g{"growth", "limsup a_{n,j}^(1/d^n) = infinity (passes if some j passes)"};
  g.verified_up_to = N;
  Verdict best = Verdict::Fail;
  for (long j = 1; j <= M; ++j) {
    SeriesResult s = growth_margin(cfg, j, N, prec);
    for (long n = 1; n <= N; ++n) g.margins.push_back({n, j, s.series[static_cast<std::size_t>(n - 1)]});
    std::string recs;
    for (long k : s.records) recs += (recs.empty() ? "" : ",") + std::to_string(k);
    g.notes.push_back("j=" + std::to_string(j) + ": " + to_string(s.verdict) + ", records at n=" + recs + (s.note.empty() ? "" : "; " + s.note));
    if (s.verdict == Verdict::Pass) {
      best = Verdict::Pass;
    } else if (s.verdict == Verdict::Indeterminate && best == Verdict::Fail) {
      best = Verdict::Indeterminate;
    }
  }
  g.verdict = best;
  if (best != Verdict::Pass) {
    g.witness = std::make_pair(N, 0L);
    g.evidence = "no sequence shows growth past the threshold";
  }
  overall = detail::combine(overall, g.verdict);
  rep.conditions.push_back(g);

  rep.overall = overall;
  for (const auto& c : rep.conditions) {
    if (c.verdict == Verdict::Fail && c.witness && !(cfg.condition5_mode == Condition5Mode::Auto && cond5 == Verdict::Pass &&
                                                      (c.name == "inverse-house" || c.name == "real-part-sign"))) {
      rep.witness = c.witness;
      break;
    }
  }
  return rep;
}

}  // namespace cfindep
