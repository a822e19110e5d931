#pragma once

#include <cmath>
#include <future>
#include <random>
#include <thread>

#include "cfindep/cfcore.hpp"
#include "cfindep/criteria.hpp"
#include "cfindep/sequences.hpp"

namespace cfindep {

// Ratio q_{n,a}/q_{n,b} for two sequences of partial quotients ----------------

struct RatioTrace {
  std::vector<long> indices;
  std::vector<DyadicInterval> ratios;         // q_{n,a}/q_{n,b}
  std::vector<DyadicInterval> liminf_margin;  // sqrt(n) (a_n/b_n - 1)
  bool exact = true;                          // ratios from exact q's
  long increasing_from = 0;                   // first n after which the ratios certainly increase (0: never)
};

namespace detail {

inline DyadicInterval quotient_checked(const CFSpec& s, long n, long prec, const char* which) {
  DyadicInterval v = quotient_enclosure(s, n, prec);
  if (!certainly_leq(DyadicInterval(1), v)) {
    raise(ErrorCode::QuotientBelowOne, std::string(which) + "_" + std::to_string(n) + " = " + decimal_string(v) + " is not >= 1");
  }
  return v;
}

}  // namespace detail

inline RatioTrace lemma1_trace(const CFSpec& a, const CFSpec& b, long N, long prec = kDefaultPrecision) {
  if (N < 1) raise(ErrorCode::InvalidArgument, "N must be >= 1");
  RatioTrace t;
  t.exact = a.exact() && b.exact();
  ConvergentState sa = cf_start(mpq_class(0)), sb = cf_start(mpq_class(0));
  // interval recurrences for the inexact path: (q_prev, q_cur)
  DyadicInterval qa0(0), qa1(1), qb0(0), qb1(1);
  long wp = prec + 64;
  for (long n = 1; n <= N; ++n) {
    DyadicInterval an = detail::quotient_checked(a, n, wp, "a"), bn = detail::quotient_checked(b, n, wp, "b");
    t.indices.push_back(n);
    if (t.exact) {
      sa = cfindep::advance(sa, quotient(a, n));
      sb = cfindep::advance(sb, quotient(b, n));
      t.ratios.push_back(s_enclose(s_div(sa.q_cur, sb.q_cur), prec));
      t.liminf_margin.push_back(
          iv_mul(iv_sqrt(DyadicInterval(n), prec), s_enclose(s_sub(s_div(quotient(a, n), quotient(b, n)), mpq_class(1)), prec), prec));
    } else {
      DyadicInterval na = iv_add(iv_mul(an, qa1, wp), qa0, wp), nb = iv_add(iv_mul(bn, qb1, wp), qb0, wp);
      qa0 = qa1;
      qa1 = na;
      qb0 = qb1;
      qb1 = nb;
      t.ratios.push_back(round_out(iv_div(qa1, qb1, wp), prec));
      t.liminf_margin.push_back(iv_mul(iv_sqrt(DyadicInterval(n), prec), iv_sub(iv_div(an, bn, wp), DyadicInterval(1), wp), prec));
    }
  }
  // largest suffix on which the ratios certainly increase
  long k = N;
  while (k >= 2 && certainly_less(t.ratios[static_cast<std::size_t>(k - 2)], t.ratios[static_cast<std::size_t>(k - 1)])) --k;
  t.increasing_from = k < N ? k : 0;
  return t;
}

// Remark: a_n = n^2 + 1 against b_n = n^2 -------------------------------------

inline constexpr long kRemarkPartialTerms = 1000000;

/// Enclosure of prod_{n>=1} (1 + 1/n^2)^2: the partial product to 10^6 from below,
/// times exp(2 sum_{n>10^6} 1/n^2) <= exp(2/10^6) from above.
inline DyadicInterval remark_product_bound(long prec = 96) {
  static std::mutex mu;
  static std::map<long, DyadicInterval> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(prec); it != cache.end()) return it->second;
  long wp = prec + 32;
  DyadicInterval p(1);
  for (long from = 1; from <= kRemarkPartialTerms; from += 512) {
    // exact block products, one rounding per block
    mpz_class num = 1, den = 1;
    for (long n = from; n < from + 512 && n <= kRemarkPartialTerms; ++n) {
      mpz_class n2 = mpz_class(n) * n;
      num *= n2 + 1;
      den *= n2;
    }
    p = iv_div(iv_mul(p, DyadicInterval(Dyadic(num, 0)), wp), DyadicInterval(Dyadic(den, 0)), wp);
  }
  p = iv_sqr(p, wp);
  DyadicInterval tail = iv_exp(DyadicInterval::from_rational(mpq_class(2, kRemarkPartialTerms), wp), wp);
  DyadicInterval out = round_out(DyadicInterval(p.lo(), iv_mul(p, tail, wp).hi()), prec);
  cache.emplace(prec, out);
  return out;
}

struct RemarkResult {
  long N = 0;
  std::vector<DyadicInterval> ratios;  // n = 1..N
  DyadicInterval max_ratio;
  DyadicInterval bound;
  bool monotone = true;     // strictly increasing, checked exactly
  bool below_bound = true;  // every ratio certainly below the infinite product
};

inline RemarkResult remark_counterexample(long N, long prec = kDefaultPrecision) {
  if (N < 2) raise(ErrorCode::InvalidArgument, "remark needs N >= 2");
  RemarkResult r;
  r.N = N;
  r.bound = remark_product_bound();
  mpz_class qa_prev = 0, qa = 1, qb_prev = 0, qb = 1;
  for (long n = 1; n <= N; ++n) {
    mpz_class n2 = mpz_class(n) * n;
    mpz_class na = (n2 + 1) * qa + qa_prev, nb = n2 * qb + qb_prev;
    if (n >= 2 && na * qb <= qa * nb) r.monotone = false;
    qa_prev = qa;
    qa = na;
    qb_prev = qb;
    qb = nb;
    DyadicInterval ra = iv_div(DyadicInterval::from_rational(mpq_class(qa), prec + 16), DyadicInterval::from_rational(mpq_class(qb), prec + 16), prec);
    r.ratios.push_back(ra);
    if (!certainly_less(ra, DyadicInterval(r.bound.lo()))) r.below_bound = false;
  }
  r.max_ratio = r.ratios.front();
  for (const auto& v : r.ratios) r.max_ratio = iv_max(r.max_ratio, v);
  return r;
}

// Lemmas 2 and 3: complex continued fractions ----------------------------------

inline constexpr long kLemmaSlackBits = 40;

struct LemmaCheck {
  Verdict verdict = Verdict::Fail;
  DyadicInterval value;   // lemma 2: |CF|; lemma 3: Re CF - Re z_0
  DyadicInterval identity_gap;  // lemma 3: |Re CF(-z)| - Re CF(z)
  std::string evidence;
};

namespace detail {

inline Dyadic lemma_slack() { return Dyadic::pow2(-kLemmaSlackBits); }

}  // namespace detail

/// |z_k| >= 2 for all k implies |[z_0; z_1, ..., z_n]| >= 1.
inline LemmaCheck lemma2_check(const std::vector<ComplexInterval>& z, long prec = kDefaultPrecision) {
  if (z.empty()) raise(ErrorCode::InvalidArgument, "empty tuple");
  for (std::size_t k = 0; k < z.size(); ++k) {
    if (cmp(c_norm2(z[k], prec).lo(), Dyadic(4) - detail::lemma_slack()) < 0) {
      raise(ErrorCode::HypothesisViolated, "|z_" + std::to_string(k) + "| >= 2 not verified: " + z[k].to_string());
    }
  }
  LemmaCheck out;
  out.value = c_abs(complex_cf_eval(z, prec), prec);
  if (cmp(out.value.lo(), Dyadic(1) - detail::lemma_slack()) >= 0) {
    out.verdict = Verdict::Pass;
  } else {
    out.evidence = "|CF| = " + decimal_string(out.value) + " below 1";
  }
  return out;
}

/// Re z_k > 0 for all k implies Re [z_0; ...] >= Re z_0, and |Re [-z_0; ...]| = Re [z_0; ...].
inline LemmaCheck lemma3_check(const std::vector<ComplexInterval>& z, long prec = kDefaultPrecision) {
  if (z.empty()) raise(ErrorCode::InvalidArgument, "empty tuple");
  for (std::size_t k = 0; k < z.size(); ++k) {
    if (!z[k].re().positive()) raise(ErrorCode::HypothesisViolated, "Re z_" + std::to_string(k) + " > 0 not verified: " + z[k].to_string());
  }
  std::vector<ComplexInterval> neg;
  for (const auto& v : z) neg.push_back(-v);
  DyadicInterval re = complex_cf_eval(z, prec).re();
  DyadicInterval re_neg = complex_cf_eval(neg, prec).re();
  LemmaCheck out;
  out.value = iv_sub(re, z.front().re(), prec);
  out.identity_gap = iv_sub(iv_abs(re_neg), re, prec);
  DyadicInterval gap = iv_abs(out.identity_gap);
  bool bound_ok = cmp(re.lo(), z.front().re().hi() - detail::lemma_slack()) >= 0;
  bool ident_ok = cmp(gap.hi(), detail::lemma_slack()) <= 0;
  if (bound_ok && ident_ok) {
    out.verdict = Verdict::Pass;
  } else if (!bound_ok) {
    out.evidence = "Re CF - Re z_0 = " + decimal_string(out.value) + " below 0";
  } else {
    out.evidence = "negation identity gap " + decimal_string(out.identity_gap);
  }
  return out;
}

struct SuiteResult {
  std::string lemma;
  std::uint64_t seed = 0;
  long trials = 0;
  long passed = 0;
  DyadicInterval worst;  // smallest |CF| (lemma 2) or Re CF - Re z_0 (lemma 3)
  long worst_trial = -1;
  std::vector<long> failures;
};

namespace detail {

/// Point box for a double, exact.
inline ComplexInterval point(double re, double im) {
  return {DyadicInterval(Dyadic::from_double(re)), DyadicInterval(Dyadic::from_double(im))};
}

inline std::vector<ComplexInterval> lemma2_tuple(std::uint64_t seed, long trial) {
  std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(trial + 1)));
  std::uniform_int_distribution<int> len(1, 8);
  std::uniform_real_distribution<double> mod(2.0, 10.0), arg(0.0, 2 * M_PI);
  int L = len(rng);
  std::vector<ComplexInterval> z;
  while (static_cast<int>(z.size()) < L) {
    double r = mod(rng), t = arg(rng);
    ComplexInterval c = point(r * std::cos(t), r * std::sin(t));
    if (cmp(c_norm2(c).lo(), Dyadic(4)) >= 0) z.push_back(c);  // reject rounding below the circle
  }
  return z;
}

inline std::vector<ComplexInterval> lemma3_tuple(std::uint64_t seed, long trial) {
  std::mt19937_64 rng(seed ^ (0xbf58476d1ce4e5b9ULL * static_cast<std::uint64_t>(trial + 1)));
  std::uniform_int_distribution<int> len(1, 8);
  std::uniform_real_distribution<double> re(0.0, 5.0), im(-5.0, 5.0);
  int L = len(rng);
  std::vector<ComplexInterval> z;
  while (static_cast<int>(z.size()) < L) {
    double x = 5.0 - re(rng);  // (0, 5]
    if (x > 0) z.push_back(point(x, im(rng)));
  }
  return z;
}

template <class Gen, class Check>
SuiteResult run_suite(const std::string& name, long trials, std::uint64_t seed, unsigned threads, Gen gen, Check check) {
  std::vector<LemmaCheck> res(static_cast<std::size_t>(trials));
  auto work = [&](long from, long to) {
    for (long t = from; t < to; ++t) res[static_cast<std::size_t>(t)] = check(gen(seed, t));
  };
  threads = std::max(1u, threads);
  std::vector<std::future<void>> fut;
  long chunk = (trials + threads - 1) / threads;
  for (long from = 0; from < trials; from += chunk) fut.push_back(std::async(std::launch::async, work, from, std::min(trials, from + chunk)));
  for (auto& f : fut) f.get();
  SuiteResult s;
  s.lemma = name;
  s.seed = seed;
  s.trials = trials;
  for (long t = 0; t < trials; ++t) {
    const auto& r = res[static_cast<std::size_t>(t)];
    if (r.verdict == Verdict::Pass) {
      ++s.passed;
    } else {
      s.failures.push_back(t);
    }
    if (s.worst_trial < 0 || cmp(r.value.lo(), s.worst.lo()) < 0) {
      s.worst = r.value;
      s.worst_trial = t;
    }
  }
  return s;
}

}  // namespace detail

inline SuiteResult lemma2_suite(long trials = 1000, std::uint64_t seed = 1, unsigned threads = 1) {
  return detail::run_suite("lemma2", trials, seed, threads, detail::lemma2_tuple, [](const auto& z) { return lemma2_check(z); });
}

inline SuiteResult lemma3_suite(long trials = 1000, std::uint64_t seed = 1, unsigned threads = 1) {
  return detail::run_suite("lemma3", trials, seed, threads, detail::lemma3_tuple, [](const auto& z) { return lemma3_check(z); });
}

}  // namespace cfindep
