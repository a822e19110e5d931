#include <gtest/gtest.h>

#include <cmath>

#include "cfindep/catalog.hpp"
#include "cfindep/criteria.hpp"

using namespace cfindep;

namespace {

mpz_class pow2(unsigned long e) {
  mpz_class a = 1;
  mpz_mul_2exp(a.get_mpz_t(), a.get_mpz_t(), e);
  return a;
}

Thm1Config make(FieldPtr k, std::vector<CFSpec> s) {
  Thm1Config c;
  c.field = std::move(k);
  c.sequences = std::move(s);
  return c;
}

FieldElement sqrt2(const mpq_class& m) { return FieldElement(sqrt2_field(), {0, m}); }

CFSpec explicit_ints(const std::vector<mpz_class>& v) {
  std::vector<Scalar> s;
  for (const auto& x : v) s.emplace_back(mpq_class(x));
  return seq_explicit(s);
}

}  // namespace

TEST(ComputeD, Examples) {
  EXPECT_EQ(compute_d(2, 2), 3);
  EXPECT_EQ(compute_d(1, 2), 2);
  for (long K = 2; K <= 6; ++K) EXPECT_EQ(compute_d(K, K), K * K - 1);
}

TEST(ComputeD, Invariants) {
  for (long D = 1; D <= 8; ++D)
    for (long M = 1; M <= 8; ++M) {
      long d = compute_d(D, M);
      EXPECT_GE(d, 2);
      EXPECT_EQ(d == D * M - 1, D * M >= 3);
    }
}

TEST(Config, GammaMustBeInside) {
  Thm1Config c = make(NumberField::rationals(), {seq_constant(2)});
  c.gamma = 1;
  EXPECT_THROW(c.validate(), Error);
  c.gamma = 0;
  EXPECT_THROW(c.validate(), Error);
  c.gamma = mpq_class(1, 3);
  EXPECT_NO_THROW(c.validate());
}

TEST(Decomposition, RootScaledPasses) {
  IntPoly P{14, -8, 1};
  FieldPtr k = root_field(P);
  CFSpec base = explicit_ints({1, 2, 3, 7});
  Thm1Config c = make(k, {seq_root_scaled(P, 1, base, k)});
  c.search_decompositions = false;
  for (long n = 1; n <= 4; ++n) EXPECT_EQ(check_decomposition(c, n, 1).verdict, Verdict::Pass) << n;
}

TEST(Decomposition, RationalWithDenominator) {
  Thm1Config c = make(NumberField::rationals(), {seq_constant(mpq_class(5, 2))});
  auto dec = decomposition(c.sequences[0], 1);
  ASSERT_TRUE(dec);
  EXPECT_EQ(dec->S, 5);
  EXPECT_TRUE(s_equal(dec->d, mpq_class(2)));
  EXPECT_EQ(check_decomposition(c, 1, 1).verdict, Verdict::Pass);
}

TEST(Decomposition, BelowOneFails) {
  Thm1Config c = make(NumberField::rationals(), {seq_constant(mpq_class(1, 2))});
  CheckOutcome o = check_decomposition(c, 1, 1);
  EXPECT_EQ(o.verdict, Verdict::Fail);
  EXPECT_TRUE(o.margin.negative());
}

TEST(InverseHouse, Sqrt2TimesM) {
  Thm1Config c = make(sqrt2_field(), {seq_explicit({sqrt2(1), sqrt2(2), sqrt2(3)})});
  c.condition5_mode = Condition5Mode::HouseHalf;
  // house(1/(sqrt2 m)) = 1/(sqrt2 m), >= 1/2 only for m = 1
  CheckOutcome o1 = check_inverse_house(c, 1, 1);
  EXPECT_EQ(o1.verdict, Verdict::Pass);
  EXPECT_NEAR(o1.margin.to_double(), 1 / std::sqrt(2.0) - 0.5, 1e-12);
  EXPECT_EQ(check_inverse_house(c, 2, 1).verdict, Verdict::Fail);
  EXPECT_EQ(check_inverse_house(c, 3, 1).verdict, Verdict::Fail);
}

TEST(HouseConditions, Ex1Passes) {
  Thm1Config c = named_example("ex1").config();
  for (long n = 1; n <= 5; ++n)
    for (long j = 1; j <= 2; ++j) EXPECT_EQ(check_house_conditions(c, n, j).verdict, Verdict::Pass) << n << "," << j;
}

TEST(HouseConditions, BEqualsFourPlusSqrt2) {
  // rule decomposition only: S = a_n, b = 4 + sqrt2, c = 0, d = 1
  Thm1Config c = named_example("ex1").config();
  c.search_decompositions = false;
  // log2 house(b) = log2(5.414...) = 2.437; bound 3^(n/2) reaches it from n = 2 on
  for (long n = 2; n <= 5; ++n) EXPECT_EQ(check_house_conditions(c, n, 1).verdict, Verdict::Pass) << n;
}

TEST(HouseConditions, ZeroCIsFree) {
  Thm1Config c = make(NumberField::rationals(), {seq_doubly_exponential(2)});
  auto dec = decomposition(c.sequences[0], 3);
  ASSERT_TRUE(dec);
  EXPECT_TRUE(s_is_zero(dec->c));
  EXPECT_EQ(check_house_conditions(c, 3, 1).verdict, Verdict::Pass);
}

TEST(Condition10, PhiPowersSignStable) {
  Thm1Config c = named_example("laursen").config(2);
  auto e = infer_sign_table(c, 1);
  ASSERT_EQ(e.size(), 2u);
  for (long n = 1; n <= 5; ++n)
    for (long j = 1; j <= 2; ++j) EXPECT_EQ(check_condition10(c, n, j, e).verdict, Verdict::Pass) << n << "," << j;
  // conjugate -1/phi raised to j + 2(n-1) has the sign of (-1)^j: sequence 1 is j = 2, sequence 2 is j = 1
  EXPECT_EQ(e[0], (std::vector<int>{0, 0}));
  EXPECT_EQ(e[1][0] + e[1][1], 1);
}

TEST(Condition10, RationalIdentityOnly) {
  Thm1Config c = make(NumberField::rationals(), {seq_doubly_exponential(2)});
  auto e = infer_sign_table(c, 1);
  EXPECT_EQ(e, (std::vector<std::vector<int>>{{0}}));
  for (long n = 1; n <= 4; ++n) EXPECT_EQ(check_condition10(c, n, 1, e).verdict, Verdict::Pass);
}

TEST(Condition10, AlternatingSignFails) {
  // (-1)^n sqrt2 n as the second sequence; the threshold comes from a_{n,1} > 0
  Thm1Config c = make(sqrt2_field(), {seq_doubly_exponential(3), seq_explicit({sqrt2(-1), sqrt2(2), sqrt2(-3), sqrt2(4)})});
  auto e = infer_sign_table(c, 1);
  EXPECT_EQ(check_condition10(c, 1, 2, e).verdict, Verdict::Pass);
  EXPECT_EQ(check_condition10(c, 2, 2, e).verdict, Verdict::Fail);
  EXPECT_EQ(check_condition10(c, 3, 2, e).verdict, Verdict::Pass);
}

TEST(Interleaving, SingleSequence) {
  Thm1Config c = make(NumberField::rationals(), {seq_doubly_exponential(2)});
  for (long n = 1; n <= 5; ++n) EXPECT_EQ(check_interleaving(c, n).verdict, Verdict::Pass);
}

TEST(Interleaving, FirstBranchDominates) {
  // D = M = 2 so d = 3; a_{n,2} = 2^(3^n), a_{n,1} = 2 a_{n,2}
  std::vector<mpz_class> lo, hi;
  for (unsigned long n = 1; n <= 3; ++n) {
    mpz_class a = pow2(static_cast<unsigned long>(std::pow(3, n)));
    lo.push_back(a);
    hi.push_back(2 * a);
  }
  Thm1Config c = make(sqrt2_field(), {explicit_ints(hi), explicit_ints(lo)});
  EXPECT_EQ(c.d(), 3);
  CheckOutcome o = check_interleaving(c, 2);
  EXPECT_EQ(o.verdict, Verdict::Pass);
  // log2 margin: 9 + 9^(1/2) - 10 = 2
  EXPECT_NEAR(o.margin.to_double(), 2.0, 1e-9);
}

TEST(Interleaving, CubeFails) {
  // a_{n,2} = 2^n, a_{n,1} = 2^(3n), D = 1, M = 2, d = 2: 3n vs max(n + sqrt n, 2^(n/2))
  std::vector<mpz_class> small, big;
  for (unsigned long n = 1; n <= 12; ++n) {
    small.push_back(pow2(n));
    big.push_back(pow2(3 * n));
  }
  Thm1Config c = make(NumberField::rationals(), {explicit_ints(big), explicit_ints(small)});
  for (long n = 2; n <= 8; ++n) EXPECT_EQ(check_interleaving(c, n).verdict, Verdict::Fail) << n;
  // with d fixed the 2^(d^(n gamma)) branch wins eventually (3n < 2^(n/2) from n = 10)
  EXPECT_EQ(check_interleaving(c, 12).verdict, Verdict::Pass);
}

TEST(Ratio, Ex1ConstantRatioPasses) {
  Thm1Config c = named_example("ex1").config();
  SeriesResult r = ratio_margin(c, 1, 8);
  EXPECT_EQ(r.verdict, Verdict::Pass);
  // exact field ratio: (4+sqrt2)/(4-sqrt2) = (18 + 8 sqrt2)/14
  double rho = (18 + 8 * std::sqrt(2.0)) / 14;
  for (long n = 1; n <= 8; ++n) EXPECT_NEAR(r.series[n - 1].to_double(), std::sqrt(double(n)) * (rho - 1), 1e-12);
}

TEST(Ratio, EqualSequencesFail) {
  Thm1Config c = make(NumberField::rationals(), {seq_doubly_exponential(2), seq_doubly_exponential(2)});
  EXPECT_EQ(ratio_margin(c, 1, 8).verdict, Verdict::Fail);
}

TEST(Ratio, OnePlusOneOverNIndeterminate) {
  std::vector<mpz_class> a, b;
  for (long n = 1; n <= 40; ++n) {
    a.push_back(n + 1);
    b.push_back(n);
  }
  Thm1Config c = make(NumberField::rationals(), {explicit_ints(a), explicit_ints(b)});
  SeriesResult r = ratio_margin(c, 1, 40);
  EXPECT_EQ(r.verdict, Verdict::Indeterminate);
  EXPECT_NEAR(r.series.back().to_double(), 1 / std::sqrt(40.0), 1e-12);
}

TEST(Growth, DoublyExponentialPasses) {
  Thm1Config c = make(sqrt2_field(), {seq_doubly_exponential(3), seq_doubly_exponential(3)});
  SeriesResult r = growth_margin(c, 1, 6);
  EXPECT_EQ(r.verdict, Verdict::Pass);
  for (long n = 1; n <= 6; ++n) EXPECT_NEAR(r.series[n - 1].to_double(), std::pow(2.0, n), 1e-9 * std::pow(2.0, n));
}

TEST(Growth, ConstantGIsIndeterminate) {
  std::vector<mpz_class> a;
  for (unsigned long n = 1; n <= 6; ++n) a.push_back(pow2(static_cast<unsigned long>(std::pow(3, n))));
  Thm1Config c = make(sqrt2_field(), {explicit_ints(a), explicit_ints(a)});
  SeriesResult r = growth_margin(c, 1, 6);
  EXPECT_EQ(r.verdict, Verdict::Indeterminate);
  for (const auto& g : r.series) EXPECT_TRUE(g.contains(Dyadic(2)));
}

TEST(Growth, LinearFails) {
  std::vector<mpz_class> a;
  for (long n = 1; n <= 12; ++n) a.push_back(n);
  Thm1Config c = make(NumberField::rationals(), {explicit_ints(a)});
  EXPECT_EQ(c.d(), 2);
  EXPECT_EQ(growth_margin(c, 1, 12).verdict, Verdict::Fail);
}

TEST(CheckAll, Ex1OverallPass) {
  Thm1Config c = named_example("ex1").config();
  HypothesisReport r = check_all(c, 6, 512);
  EXPECT_EQ(r.overall, Verdict::Pass);
  EXPECT_EQ(r.label, "prefix-consistent");
  EXPECT_EQ(r.d, 3);
  for (const char* name : {"decomposition", "house-bounds", "interleaving", "ratio-1", "growth"}) {
    ASSERT_NE(r.find(name), nullptr) << name;
    EXPECT_EQ(r.find(name)->verdict, Verdict::Pass) << name;
    EXPECT_EQ(r.find(name)->verified_up_to, 6) << name;
  }
}

TEST(CheckAll, C2Pass) {
  Thm1Config c = named_example("c2").config(3);
  EXPECT_EQ(c.D(), 1);
  EXPECT_EQ(c.M(), 3);
  EXPECT_EQ(c.d(), 2);
  EXPECT_EQ(check_all(c, 6, 256).overall, Verdict::Pass);
}

TEST(CheckAll, C2WithoutIndexShiftFailsInterleavingAtOne) {
  CFSpec base = seq_doubly_exponential(2);
  Thm1Config c = make(NumberField::rationals(), {seq_div_by_j(1, base), seq_div_by_j(2, base), seq_div_by_j(3, base)});
  HypothesisReport r = check_all(c, 5, 256);
  EXPECT_EQ(r.overall, Verdict::Fail);
  const ConditionResult* il = r.find("interleaving");
  ASSERT_NE(il, nullptr);
  EXPECT_EQ(il->verdict, Verdict::Fail);
  ASSERT_TRUE(il->witness);
  EXPECT_EQ(il->witness->first, 1);
}

TEST(CheckAll, BelowOneWitness) {
  Thm1Config c = make(NumberField::rationals(), {seq_explicit({mpq_class(1, 2), mpq_class(4), mpq_class(16)})});
  HypothesisReport r = check_all(c, 3, 128);
  EXPECT_EQ(r.overall, Verdict::Fail);
  const ConditionResult* dc = r.find("decomposition");
  ASSERT_NE(dc, nullptr);
  EXPECT_EQ(dc->verdict, Verdict::Fail);
  ASSERT_TRUE(dc->witness);
  EXPECT_EQ(*dc->witness, (std::pair<long, long>{1, 1}));
  EXPECT_FALSE(dc->evidence.empty());
}

TEST(CheckAll, HanlucFailsRatio) {
  HypothesisReport r = check_all(named_example("hanluc").config(), 6, 256);
  EXPECT_EQ(r.overall, Verdict::Fail);
  EXPECT_EQ(r.find("ratio-1")->verdict, Verdict::Fail);
}

TEST(CheckAll, ThreadCountDoesNotMatter) {
  Thm1Config c = named_example("ex2").config();
  HypothesisReport a = check_all(c, 5, 256, 1), b = check_all(c, 5, 256, 4);
  ASSERT_EQ(a.conditions.size(), b.conditions.size());
  for (std::size_t i = 0; i < a.conditions.size(); ++i) {
    EXPECT_EQ(a.conditions[i].verdict, b.conditions[i].verdict);
    ASSERT_EQ(a.conditions[i].margins.size(), b.conditions[i].margins.size());
    for (std::size_t k = 0; k < a.conditions[i].margins.size(); ++k) {
      EXPECT_TRUE(a.conditions[i].margins[k].margin.lo() == b.conditions[i].margins[k].margin.lo());
      EXPECT_TRUE(a.conditions[i].margins[k].margin.hi() == b.conditions[i].margins[k].margin.hi());
    }
  }
}

// For D = 1, M = K the general checker and the C2 constructor agree condition by condition.
TEST(Specialization, C2ConstructorMatchesHandBuilt) {
  for (long K = 2; K <= 4; ++K) {
    Thm1Config from_catalog = named_example("c2").config(K);
    CFSpec base = seq_doubly_exponential(compute_d(1, K), 1);
    std::vector<CFSpec> s;
    for (long j = 1; j <= K; ++j) s.push_back(seq_div_by_j(j, base));
    Thm1Config by_hand = make(NumberField::rationals(), s);
    HypothesisReport a = check_all(from_catalog, 5, 256), b = check_all(by_hand, 5, 256);
    EXPECT_EQ(a.overall, Verdict::Pass) << K;
    ASSERT_EQ(a.conditions.size(), b.conditions.size());
    for (std::size_t i = 0; i < a.conditions.size(); ++i) {
      EXPECT_EQ(a.conditions[i].name, b.conditions[i].name);
      EXPECT_EQ(a.conditions[i].verdict, b.conditions[i].verdict) << K << " " << a.conditions[i].name;
    }
  }
}

TEST(Properties, PassSurvivesDoubledPrecision) {
  for (const char* name : {"ex1", "ex3", "c2", "c4", "laursen"}) {
    Thm1Config c = named_example(name).config();
    HypothesisReport lo = check_all(c, 5, 128), hi = check_all(c, 5, 256);
    for (std::size_t i = 0; i < lo.conditions.size(); ++i)
      if (lo.conditions[i].verdict == Verdict::Pass) EXPECT_EQ(hi.conditions[i].verdict, Verdict::Pass) << name << " " << lo.conditions[i].name;
  }
}

TEST(Properties, FailsReverifyAtDoubledPrecision) {
  // inverse-house fails for Ex1 at (1,1); re-check the cited inequality at 2P
  Thm1Config ex1 = named_example("ex1").config();
  HypothesisReport r = check_all(ex1, 4, 256);
  const ConditionResult* ih = r.find("inverse-house");
  ASSERT_NE(ih, nullptr);
  ASSERT_EQ(ih->verdict, Verdict::Fail);
  ASSERT_TRUE(ih->witness);
  EXPECT_EQ(check_inverse_house(ex1, ih->witness->first, ih->witness->second, 512).verdict, Verdict::Fail);

  Thm1Config bad = make(NumberField::rationals(), {seq_explicit({mpq_class(1, 2), mpq_class(4)})});
  HypothesisReport rb = check_all(bad, 2, 128);
  const ConditionResult* dc = rb.find("decomposition");
  ASSERT_TRUE(dc->witness);
  EXPECT_EQ(check_decomposition(bad, dc->witness->first, dc->witness->second, 256).verdict, Verdict::Fail);

  CFSpec base = seq_doubly_exponential(2);
  Thm1Config shifted = make(NumberField::rationals(), {seq_div_by_j(1, base), seq_div_by_j(2, base)});
  HypothesisReport rs = check_all(shifted, 3, 128);
  const ConditionResult* il = rs.find("interleaving");
  if (il->verdict == Verdict::Fail) EXPECT_EQ(check_interleaving(shifted, il->witness->first, 256).verdict, Verdict::Fail);
}
