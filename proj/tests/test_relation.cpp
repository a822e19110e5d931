#include <gtest/gtest.h>

#include <random>

#include "cfindep/cfcore.hpp"
#include "cfindep/relation.hpp"

using namespace cfindep;

namespace {

FieldPtr sqrt2() {
  static FieldPtr k = field_new(IntPoly{-2, 0, 1}, DyadicInterval(1, 2));
  return k;
}

/// Random dyadic in [0, 1) with `bits` bits.
Dyadic random_dyadic(std::mt19937_64& rng, long bits) {
  mpz_class m = 0;
  for (long b = 0; b < bits; b += 64) {
    mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), 64);
    m += mpz_class(std::to_string(rng()));
  }
  return Dyadic(m, -((bits + 63) / 64) * 64);
}

DyadicInterval golden_tail(long prec) {
  std::vector<Scalar> a{mpq_class(0)};
  for (int k = 1; k <= 400; ++k) a.emplace_back(mpq_class(1));
  return enclose_value(a, 399, prec).value;
}

}  // namespace

TEST(Lattice, Examples) {
  IntMatrix id{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  EXPECT_EQ(lattice_reduce(id).basis, id);
  IntMatrix single{{3, 4, 5}};
  EXPECT_EQ(lattice_reduce(single).basis, single);
  IntMatrix big{{1, 1000000000}, {0, 1}};
  auto r = lattice_reduce(big);
  // |b1|^2 <= 2^(k-1) det^(2/k) for delta = 3/4; det = 1, k = 2
  mpz_class n2 = r.basis[0][0] * r.basis[0][0] + r.basis[0][1] * r.basis[0][1];
  EXPECT_LE(n2, 2);
  try {
    lattice_reduce({{1, 2}, {2, 4}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RankDeficient);
  }
}

TEST(Lattice, InvariantsRandom) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> entry(-1000000, 1000000);
  for (int t = 0; t < 30; ++t) {
    std::size_t n = 2 + t % 6;
    IntMatrix b(n, std::vector<mpz_class>(n + 1));
    for (auto& row : b)
      for (auto& v : row) v = entry(rng);
    auto r = lattice_reduce(b);
    EXPECT_TRUE(is_lll_reduced(r.basis, mpq_class(99, 100)));
    // basis = H * input, and |det H| = 1
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c <= n; ++c) {
        mpz_class s = 0;
        for (std::size_t k = 0; k < n; ++k) s += r.transform[i][k] * b[k][c];
        EXPECT_EQ(s, r.basis[i][c]);
      }
    }
    EXPECT_EQ(abs(bareiss_determinant(r.transform)), 1);
  }
}

TEST(Relation, TrivialIdentity) {
  long p = 128;
  DyadicInterval s2 = enclose(FieldElement::theta(sqrt2()), p + 8);
  std::vector<DyadicInterval> v{DyadicInterval(1), s2, iv_add(s2, DyadicInterval(1), p + 8)};
  auto r = find_relation(v, 100, p);
  ASSERT_EQ(r.status, RelationStatus::Found);
  std::vector<mpz_class> expect{1, 1, -1};
  EXPECT_EQ(r.coefficients, expect);
  EXPECT_TRUE(r.residual.contains_zero());
}

TEST(Relation, PlantedGolden) {
  long p = 256;
  DyadicInterval alpha = golden_tail(p + 16);
  std::vector<DyadicInterval> v{alpha, iv_add(iv_mul(DyadicInterval(2), alpha, p + 16), DyadicInterval(3), p + 16),
                                DyadicInterval(1)};
  auto r = find_relation(v, 100, p);
  ASSERT_EQ(r.status, RelationStatus::Found);
  std::vector<mpz_class> expect{2, -1, 3};
  EXPECT_EQ(r.coefficients, expect);
}

TEST(Relation, PlantedRandomRecovered) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<long> coef(-100, 100), size(2, 6);
  for (int t = 0; t < 50; ++t) {
    long m = size(rng);
    std::vector<Dyadic> x;
    std::vector<long> c;
    Dyadic last;
    for (long i = 0; i + 1 < m; ++i) {
      x.push_back(random_dyadic(rng, 320));
      long ci = coef(rng);
      c.push_back(ci);
      last = last + Dyadic(ci) * x.back();
    }
    x.push_back(last);  // x_m = sum c_i x_i: planted relation (c, -1)
    std::vector<DyadicInterval> v(x.begin(), x.end());
    auto r = find_relation(v, 100, 256);
    ASSERT_EQ(r.status, RelationStatus::Found) << "trial " << t;
    EXPECT_TRUE(r.residual.contains_zero());
    Dyadic exact;
    for (std::size_t i = 0; i < x.size(); ++i) exact = exact + Dyadic(r.coefficients[i], 0) * x[i];
    EXPECT_TRUE(exact.is_zero()) << "trial " << t;
  }
}

TEST(Relation, NoFalsePositives) {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<long> size(2, 6);
  int certified = 0;
  for (int t = 0; t < 50; ++t) {
    long m = size(rng);
    std::vector<DyadicInterval> v;
    for (long i = 0; i < m; ++i) v.emplace_back(random_dyadic(rng, 320));
    auto r = find_relation(v, 100, 256);
    EXPECT_EQ(r.status, RelationStatus::NoneBelowHeight);
    certified += r.certified ? 1 : 0;
  }
  EXPECT_EQ(certified, 50);
}

TEST(Relation, PrecisionTooLow) {
  try {
    find_relation({DyadicInterval(0, 1)}, 10, 64);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PrecisionTooLow);
  }
}

TEST(Relation, DoublingPrecisionKeepsPlanted) {
  for (long p : {128L, 256L, 512L}) {
    DyadicInterval alpha = golden_tail(1100);
    std::vector<DyadicInterval> v{alpha, iv_add(iv_mul(DyadicInterval(5), alpha, 1100), DyadicInterval(-7), 1100),
                                  DyadicInterval(1)};
    EXPECT_EQ(find_relation(v, 100, p).status, RelationStatus::Found) << p;
  }
}

TEST(RelationOverField, PlantedSqrt2) {
  long p = 256;
  DyadicInterval alpha = golden_tail(p + 32);
  DyadicInterval s2 = enclose(FieldElement::theta(sqrt2()), p + 64);
  std::vector<DyadicInterval> v{alpha, iv_mul(s2, alpha, p + 64), DyadicInterval(1)};
  auto r = find_relation_over_field(v, sqrt2(), 100, p);
  ASSERT_EQ(r.status, RelationStatus::Found);
  ASSERT_EQ(r.field_coefficients.size(), 3u);
  // A_1 alpha + A_2 sqrt2 alpha + A_3 = 0 with alpha irrational of degree 2 over Q, not in
  // Q(sqrt2): forces A_1 = -sqrt2 A_2 and A_3 = 0.
  const auto& A = r.field_coefficients;
  EXPECT_FALSE(A[1].is_zero());
  EXPECT_EQ(A[0], -(FieldElement::theta(sqrt2()) * A[1]));
  EXPECT_TRUE(A[2].is_zero());
}

TEST(RelationOverField, DegreeOneMatchesPlain) {
  auto q = NumberField::rationals();
  long p = 256;
  DyadicInterval alpha = golden_tail(p + 16);
  std::vector<DyadicInterval> v{alpha, iv_add(iv_mul(DyadicInterval(2), alpha, p + 16), DyadicInterval(3), p + 16),
                                DyadicInterval(1)};
  auto a = find_relation(v, 100, p);
  auto b = find_relation_over_field(v, q, 100, p);
  EXPECT_EQ(a.status, b.status);
  EXPECT_EQ(a.coefficients, b.coefficients);
}

TEST(RootsInField, QuadraticAndCyclicCubic) {
  auto k = field_new(IntPoly{14, -8, 1}, DyadicInterval(5, 6));  // theta = 4 + sqrt2
  auto roots = roots_in_field(k, IntPoly{14, -8, 1});
  ASSERT_EQ(roots.size(), 2u);
  // x^3 - 3x + 1 is a cyclic cubic: all three roots lie in Q(theta)
  auto c = field_new(IntPoly{1, -3, 0, 1}, DyadicInterval(1, 2));
  EXPECT_EQ(roots_in_field(c, IntPoly{1, -3, 0, 1}).size(), 3u);
  // x^3 - 2 has only the one real root in Q(cbrt2)
  auto c2 = field_new(IntPoly{-2, 0, 0, 1}, DyadicInterval(1, 2));
  EXPECT_EQ(roots_in_field(c2, IntPoly{-2, 0, 0, 1}).size(), 1u);
}
