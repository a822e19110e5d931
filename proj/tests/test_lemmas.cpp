#include <gtest/gtest.h>
#include <mpfr.h>

#include <cmath>

#include "cfindep/lemmas.hpp"
#include "oracles.hpp"

using namespace cfindep;

namespace {

ComplexInterval pt(const Dyadic& re, const Dyadic& im = Dyadic(0)) { return {DyadicInterval(re), DyadicInterval(im)}; }

// (sinh(pi)/pi)^2 in MPFR, independent of the library's product evaluation
double sinh_pi_over_pi_squared() {
  mpfr_t pi, s;
  mpfr_inits2(200, pi, s, static_cast<mpfr_ptr>(nullptr));
  mpfr_const_pi(pi, MPFR_RNDN);
  mpfr_sinh(s, pi, MPFR_RNDN);
  mpfr_div(s, s, pi, MPFR_RNDN);
  mpfr_sqr(s, s, MPFR_RNDN);
  double v = mpfr_get_d(s, MPFR_RNDN);
  mpfr_clears(pi, s, static_cast<mpfr_ptr>(nullptr));
  return v;
}

}  // namespace

TEST(Lemma1, PellOverFibonacci) {
  RatioTrace t = lemma1_trace(seq_constant(2), seq_constant(1), 30);
  EXPECT_TRUE(t.exact);
  std::vector<mpz_class> pell = oracle::constant_q(2, 30), fib = oracle::constant_q(1, 30);
  for (long n = 1; n <= 30; ++n) {
    mpq_class want(pell[n], fib[n]);
    want.canonicalize();
    EXPECT_TRUE(t.ratios[n - 1].contains(want)) << n;
  }
  EXPECT_GT(t.ratios[17].lo().to_double(), 1000.0);  // n = 18
  EXPECT_EQ(t.increasing_from, 1);
}

TEST(Lemma1, ThresholdReachedWithinBound) {
  RatioTrace t = lemma1_trace(seq_constant(2), seq_constant(1), 120);
  for (double T : {1e3, 1e6, 1e9, 1e15}) {
    long bound = static_cast<long>(std::ceil(std::log(T) / std::log(1.49))) + 4;
    long hit = 0;
    for (long n = 1; n <= 120 && !hit; ++n)
      if (t.ratios[n - 1].lo().to_double() > T) hit = n;
    ASSERT_GT(hit, 0) << T;
    EXPECT_LE(hit, bound) << T;
  }
  for (long n = 2; n < 120; ++n) EXPECT_TRUE(certainly_less(t.ratios[n - 1], t.ratios[n]));
}

TEST(Lemma1, IdenticalSequencesRatioOne) {
  RatioTrace t = lemma1_trace(seq_square_plus(0), seq_square_plus(0), 20);
  for (const auto& r : t.ratios) EXPECT_TRUE(r.contains(mpq_class(1)));
  for (const auto& m : t.liminf_margin) EXPECT_TRUE(m.contains(mpq_class(0)));
}

TEST(Lemma1, OnePlusTwoOverRootN) {
  RatioTrace t = lemma1_trace(seq_one_plus_c_over_sqrt_n(2), seq_constant(1), 60);
  EXPECT_FALSE(t.exact);
  for (const auto& m : t.liminf_margin) {
    EXPECT_TRUE(m.contains(mpq_class(2)));
    EXPECT_LT(m.width().to_double(), 1e-20);
  }
  // rational oracle for the b side: q_{n,b} = F_{n+1}; the a side grows faster
  for (long n = 2; n <= 60; ++n) EXPECT_TRUE(certainly_less(t.ratios[n - 2], t.ratios[n - 1])) << n;
}

TEST(Lemma1, QuotientBelowOneRaised) {
  try {
    lemma1_trace(seq_constant(mpq_class(1, 2)), seq_constant(1), 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::QuotientBelowOne);
  }
}

TEST(Remark, ProductBoundMatchesClosedForm) {
  DyadicInterval b = remark_product_bound();
  double want = sinh_pi_over_pi_squared();
  EXPECT_NEAR(want, 13.5135, 1e-4);
  EXPECT_LE(b.lo().to_double(), want);
  EXPECT_GE(b.hi().to_double(), want);
  EXPECT_LT(b.width().to_double(), 1e-4);
}

TEST(Remark, NEqualsTwo) {
  RemarkResult r = remark_counterexample(2);
  EXPECT_TRUE(r.ratios[1].contains(mpq_class(11, 5)));
  EXPECT_TRUE(r.monotone);
  EXPECT_TRUE(r.below_bound);
}

TEST(Remark, NEqualsTen) {
  RemarkResult r = remark_counterexample(10);
  EXPECT_TRUE(r.monotone);
  EXPECT_LT(r.max_ratio.hi().to_double(), 13.52);
  // exact oracle
  mpz_class qa_prev = 0, qa = 1, qb_prev = 0, qb = 1;
  for (long n = 1; n <= 10; ++n) {
    mpz_class na = (n * n + 1) * qa + qa_prev, nb = n * n * qb + qb_prev;
    qa_prev = qa;
    qa = na;
    qb_prev = qb;
    qb = nb;
    EXPECT_TRUE(r.ratios[n - 1].contains(mpq_class(qa, qb))) << n;
  }
}

TEST(Remark, NEqualsTwoThousand) {
  RemarkResult r = remark_counterexample(2000);
  EXPECT_TRUE(r.monotone);
  EXPECT_TRUE(r.below_bound);
  EXPECT_LT(r.max_ratio.hi().to_double(), 13.52);
  EXPECT_GT(r.max_ratio.lo().to_double(), 3.2);
}

TEST(Lemma2, Examples) {
  LemmaCheck a = lemma2_check({pt(2), pt(2), pt(2)});
  EXPECT_EQ(a.verdict, Verdict::Pass);
  EXPECT_TRUE(a.value.contains(mpq_class(12, 5)));
  LemmaCheck b = lemma2_check({pt(-2), pt(2)});
  EXPECT_EQ(b.verdict, Verdict::Pass);
  EXPECT_TRUE(b.value.contains(mpq_class(3, 2)));
  LemmaCheck c = lemma2_check({pt(0, 2), pt(0, -2)});
  EXPECT_EQ(c.verdict, Verdict::Pass);
  EXPECT_TRUE(c.value.contains(mpq_class(5, 2)));
}

TEST(Lemma2, HypothesisViolated) {
  try {
    lemma2_check({pt(2), pt(1)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::HypothesisViolated);
  }
}

TEST(Lemma3, Examples) {
  LemmaCheck a = lemma3_check({pt(1), pt(1)});
  EXPECT_EQ(a.verdict, Verdict::Pass);
  EXPECT_TRUE(a.value.contains(mpq_class(1)));  // Re CF - Re z_0 = 2 - 1
  EXPECT_TRUE(a.identity_gap.contains(mpq_class(0)));

  LemmaCheck b = lemma3_check({pt(1, 1), pt(1, -1)});
  EXPECT_EQ(b.verdict, Verdict::Pass);
  EXPECT_TRUE(b.value.contains(mpq_class(1, 2)));  // 1.5 - 1

  LemmaCheck c = lemma3_check({pt(Dyadic(1, -1)), pt(3)});
  EXPECT_EQ(c.verdict, Verdict::Pass);
  EXPECT_NEAR(c.value.to_double(), 1.0 / 3, 1e-15);
}

TEST(Lemma3, HypothesisViolated) {
  try {
    lemma3_check({pt(1), pt(0, 1)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::HypothesisViolated);
  }
}

TEST(Suites, Lemma2Random) {
  SuiteResult r = lemma2_suite(1000, 1);
  EXPECT_EQ(r.trials, 1000);
  EXPECT_EQ(r.passed, 1000);
  EXPECT_TRUE(r.failures.empty());
  EXPECT_EQ(r.seed, 1u);
  EXPECT_GE(r.worst.lo().to_double(), 1.0 - std::ldexp(1.0, -40));
}

TEST(Suites, Lemma3Random) {
  SuiteResult r = lemma3_suite(1000, 1);
  EXPECT_EQ(r.passed, 1000);
  EXPECT_TRUE(r.failures.empty());
  EXPECT_GE(r.worst.lo().to_double(), -std::ldexp(1.0, -40));
}

TEST(Suites, DeterministicAcrossThreads) {
  SuiteResult a = lemma2_suite(200, 42, 1), b = lemma2_suite(200, 42, 4);
  EXPECT_EQ(a.worst_trial, b.worst_trial);
  EXPECT_TRUE(a.worst.lo() == b.worst.lo());
  SuiteResult c = lemma3_suite(200, 42, 1), d = lemma3_suite(200, 42, 3);
  EXPECT_EQ(c.worst_trial, d.worst_trial);
  EXPECT_TRUE(c.worst.hi() == d.worst.hi());
  SuiteResult e = lemma2_suite(200, 43, 1);
  EXPECT_FALSE(e.worst.lo() == a.worst.lo());
}
