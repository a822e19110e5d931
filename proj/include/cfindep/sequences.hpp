#pragma once

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "cfindep/cfcore.hpp"
#include "cfindep/relation.hpp"

namespace cfindep {

inline constexpr long kDefaultMaxBits = 1000000;

/// Per-quotient bit guard; CFINDEP_MAX_BITS overrides the default.
inline long max_quotient_bits() {
  if (const char* env = std::getenv("CFINDEP_MAX_BITS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultMaxBits;
}

// ---------------------------------------------------------------------------
// Arithmetic functions

namespace detail {

class PrimeTable {
 public:
  static PrimeTable& instance() {
    static PrimeTable t;
    return t;
  }

  /// Primes up to at least `limit`, as an immutable shared snapshot.
  std::shared_ptr<const std::vector<long>> up_to(long limit) {
    std::lock_guard<std::mutex> lock(mu_);
    if (!primes_ || limit_ < limit) {
      long n = std::max(limit, 2 * limit_);
      std::vector<bool> composite(static_cast<std::size_t>(n + 1), false);
      auto p = std::make_shared<std::vector<long>>();
      for (long i = 2; i <= n; ++i) {
        if (composite[static_cast<std::size_t>(i)]) continue;
        p->push_back(i);
        for (long k = i * i; k <= n; k += i) composite[static_cast<std::size_t>(k)] = true;
      }
      primes_ = std::move(p);
      limit_ = n;
    }
    return primes_;
  }

 private:
  std::mutex mu_;
  std::shared_ptr<const std::vector<long>> primes_;
  long limit_ = 1024;
};

}  // namespace detail

/// pi(x): number of primes <= x.
inline long prime_pi(long x) {
  if (x < 2) return 0;
  auto p = detail::PrimeTable::instance().up_to(x);
  return static_cast<long>(std::upper_bound(p->begin(), p->end(), x) - p->begin());
}

/// n-th prime, p_1 = 2.
inline long nth_prime(long n) {
  if (n < 1) raise(ErrorCode::InvalidArgument, "nth_prime needs n >= 1");
  long limit = 64;
  while (true) {
    auto p = detail::PrimeTable::instance().up_to(limit);
    if (static_cast<long>(p->size()) >= n) return (*p)[static_cast<std::size_t>(n - 1)];
    limit *= 2;
  }
}

/// Number of divisors d(n).
inline long divisor_count(long n) {
  if (n < 1) raise(ErrorCode::InvalidArgument, "divisor_count needs n >= 1");
  long count = 1;
  for (long p = 2; p * p <= n; ++p) {
    long e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    count *= e + 1;
  }
  return n > 1 ? count * 2 : count;
}

/// H_n = sum_{k<=n} 1/k, exact.
inline mpq_class harmonic(long n) {
  mpq_class h = 0;
  for (long k = 1; k <= n; ++k) h += mpq_class(1, k);
  h.canonicalize();
  return h;
}

/// a_n = 2^(n d^n).
inline mpz_class gen_doubly_exponential(long d, long n) {
  if (d < 2 || n < 1) raise(ErrorCode::InvalidArgument, "doubly exponential needs d >= 2, n >= 1");
  mpz_class e;
  mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(n));
  e *= n;
  if (e > max_quotient_bits()) {
    raise(ErrorCode::Overflow, "2^(" + std::to_string(n) + "*" + std::to_string(d) + "^" + std::to_string(n) + ") exceeds " +
                                   std::to_string(max_quotient_bits()) + " bits (set CFINDEP_MAX_BITS to raise the guard)");
  }
  mpz_class a = 1;
  mpz_mul_2exp(a.get_mpz_t(), a.get_mpz_t(), e.get_ui());
  return a;
}

/// 1 + p_n / n.
inline mpq_class gen_prime_ratio(long n) {
  mpq_class r(n + nth_prime(n), n);
  r.canonicalize();
  return r;
}

// ---------------------------------------------------------------------------
// Sequence specifications

enum class SeqKind {
  Constant,            // a_n = value
  Explicit,            // a_n = values[n-1]
  SquarePlus,          // a_n = n^2 + value
  OnePlusCOverSqrtN,   // a_n = 1 + value / sqrt(n)  (enclosure only)
  DoublyExponential,   // a_n = 2^(m d^m), m = n + offset
  DivByJ,              // base_n / j
  RootScaled,          // alpha_j * base_n
  Harmonic,            // base_n (j + H_n)
  PrimePiPower,        // base_n (1 + pi(n)/n)^j
  DivisorSqrt2,        // base_n d(n) sqrt2
  DivisorPlusOneSqrt2, // base_n (1 + d(n)) sqrt2
  PhiPowers,           // phi^(j + 2(n-1)) base_n
  SqrtJ,               // sqrt(j) base_n
  PrimeRatioSqrt2,     // (1 + p_n/n) sqrt2
  PrimeScaledSqrt2,    // base_n (p_n/n) sqrt2
};

inline const std::vector<std::pair<SeqKind, std::string>>& seq_kind_names() {
  static const std::vector<std::pair<SeqKind, std::string>> names{
      {SeqKind::Constant, "constant"},
      {SeqKind::Explicit, "explicit"},
      {SeqKind::SquarePlus, "square-plus"},
      {SeqKind::OnePlusCOverSqrtN, "one-plus-c-over-sqrt-n"},
      {SeqKind::DoublyExponential, "doubly-exponential"},
      {SeqKind::DivByJ, "div-by-j"},
      {SeqKind::RootScaled, "root-scaled"},
      {SeqKind::Harmonic, "harmonic"},
      {SeqKind::PrimePiPower, "prime-pi-power"},
      {SeqKind::DivisorSqrt2, "divisor-sqrt2"},
      {SeqKind::DivisorPlusOneSqrt2, "divisor-plus-one-sqrt2"},
      {SeqKind::PhiPowers, "phi-powers"},
      {SeqKind::SqrtJ, "sqrt-j"},
      {SeqKind::PrimeRatioSqrt2, "prime-ratio-sqrt2"},
      {SeqKind::PrimeScaledSqrt2, "prime-scaled-sqrt2"},
  };
  return names;
}

inline std::string to_string(SeqKind k) {
  for (const auto& [kind, name] : seq_kind_names())
    if (kind == k) return name;
  return "?";
}

inline SeqKind seq_kind_from_string(const std::string& s) {
  for (const auto& [kind, name] : seq_kind_names())
    if (name == s) return kind;
  raise(ErrorCode::UnknownFamily, "unknown sequence kind '" + s + "'");
}

/// a_{n} = (S b + c) / d with S a rational integer and b, c, d algebraic integers.
struct Decomposition {
  mpz_class S;
  Scalar b, c, d;
};

struct CFSpec {
  SeqKind kind = SeqKind::Constant;
  mpq_class value = 1;
  std::vector<Scalar> values;
  long d = 3;
  long offset = 0;
  long j = 1;
  FieldPtr field;                       // field of the quotients when not rational
  std::optional<FieldElement> element;  // multiplier: alpha_j, sqrt2, sqrt j or phi
  IntPoly poly;                         // root-scaled: the polynomial the multiplier is a root of
  std::shared_ptr<const CFSpec> base;

  bool exact() const {
    if (kind == SeqKind::OnePlusCOverSqrtN) return false;
    return !base || base->exact();
  }
};

// Builders -------------------------------------------------------------------

inline CFSpec seq_constant(const mpq_class& v) {
  CFSpec s;
  s.kind = SeqKind::Constant;
  s.value = v;
  return s;
}

inline CFSpec seq_explicit(std::vector<Scalar> values) {
  CFSpec s;
  s.kind = SeqKind::Explicit;
  for (const auto& v : values)
    if (is_field(v)) s.field = scalar_field(v);
  s.values = std::move(values);
  return s;
}

inline CFSpec seq_square_plus(const mpq_class& shift) {
  CFSpec s;
  s.kind = SeqKind::SquarePlus;
  s.value = shift;
  return s;
}

inline CFSpec seq_one_plus_c_over_sqrt_n(const mpq_class& c) {
  CFSpec s;
  s.kind = SeqKind::OnePlusCOverSqrtN;
  s.value = c;
  return s;
}

inline CFSpec seq_doubly_exponential(long d, long offset = 0) {
  if (d < 2) raise(ErrorCode::InvalidArgument, "doubly exponential needs d >= 2");
  if (offset < 0) raise(ErrorCode::InvalidArgument, "offset must be >= 0");
  CFSpec s;
  s.kind = SeqKind::DoublyExponential;
  s.d = d;
  s.offset = offset;
  return s;
}

inline FieldPtr sqrt2_field() {
  static const FieldPtr k = field_new(IntPoly{-2, 0, 1}, DyadicInterval(1, 2));
  return k;
}

inline FieldPtr golden_field() {
  static const FieldPtr k = field_new(IntPoly{-1, -1, 1}, DyadicInterval(1, 2));
  return k;
}

namespace detail {

inline CFSpec family(SeqKind kind, long j, const CFSpec& base) {
  CFSpec s;
  s.kind = kind;
  s.j = j;
  s.base = std::make_shared<const CFSpec>(base);
  return s;
}

inline FieldElement sqrt2_element() { return FieldElement::theta(sqrt2_field()); }

/// g(x - sqrt p) g(x + sqrt p) = A^2 - p B^2, where g(x - y) = A + y B mod y^2 - p.
inline IntPoly adjoin_sqrt(const IntPoly& g, long p) {
  // (x - y)^k reduced mod y^2 = p, tracked as (A_k, B_k).
  IntPoly A = IntPoly{1}, B = IntPoly{}, accA, accB;
  IntPoly x{0, 1};
  for (long k = 0; k <= g.degree(); ++k) {
    mpz_class gk = g.coeff(static_cast<std::size_t>(k));
    accA = accA + gk * A;
    accB = accB + gk * B;
    // multiply (A + yB) by (x - y): A x - p B + y (B x - A)
    IntPoly nA = A * x - mpz_class(p) * B;
    IntPoly nB = B * x - A;
    A = nA;
    B = nB;
  }
  return accA * accA - mpz_class(p) * accB * accB;
}

}  // namespace detail

inline CFSpec seq_div_by_j(long j, const CFSpec& base) {
  if (j < 1) raise(ErrorCode::InvalidArgument, "div-by-j needs j >= 1");
  return detail::family(SeqKind::DivByJ, j, base);
}

inline CFSpec seq_harmonic(long j, const CFSpec& base) { return detail::family(SeqKind::Harmonic, j, base); }

inline CFSpec seq_prime_pi_power(long j, const CFSpec& base) {
  if (j < 0) raise(ErrorCode::InvalidArgument, "prime-pi-power needs j >= 0");
  return detail::family(SeqKind::PrimePiPower, j, base);
}

inline CFSpec seq_divisor_sqrt2(const CFSpec& base) {
  CFSpec s = detail::family(SeqKind::DivisorSqrt2, 1, base);
  s.field = sqrt2_field();
  s.element = detail::sqrt2_element();
  return s;
}

inline CFSpec seq_divisor_plus_one_sqrt2(const CFSpec& base) {
  CFSpec s = detail::family(SeqKind::DivisorPlusOneSqrt2, 1, base);
  s.field = sqrt2_field();
  s.element = detail::sqrt2_element();
  return s;
}

inline CFSpec seq_phi_powers(long j, const CFSpec& base) {
  if (j < 1) raise(ErrorCode::InvalidArgument, "phi-powers needs j >= 1");
  CFSpec s = detail::family(SeqKind::PhiPowers, j, base);
  s.field = golden_field();
  s.element = FieldElement::theta(golden_field());
  return s;
}

inline CFSpec seq_prime_ratio_sqrt2() {
  CFSpec s;
  s.kind = SeqKind::PrimeRatioSqrt2;
  s.field = sqrt2_field();
  s.element = detail::sqrt2_element();
  return s;
}

inline CFSpec seq_prime_scaled_sqrt2(const CFSpec& base) {
  CFSpec s = detail::family(SeqKind::PrimeScaledSqrt2, 1, base);
  s.field = sqrt2_field();
  s.element = detail::sqrt2_element();
  return s;
}

/// Q(sqrt p : p prime <= K), generated by the sum of those square roots.
inline FieldPtr multiquadratic_field(long K) {
  std::vector<long> primes;
  for (long p = 2; p <= K; ++p)
    if (prime_pi(p) > prime_pi(p - 1)) primes.push_back(p);
  if (primes.empty()) return NumberField::rationals();
  if ((1L << primes.size()) > kMaxFieldDegree) {
    raise(ErrorCode::DegreeTooLarge, "Q(sqrt 1..sqrt " + std::to_string(K) + ") has degree > 8");
  }
  IntPoly g{0, 1};
  for (long p : primes) g = detail::adjoin_sqrt(g, p);
  // theta = sum sqrt p is the largest real root of g
  auto roots = isolate_real_roots(g);
  return field_new(g, roots.back());
}

/// Positive square root of j inside K (which must contain it).
inline FieldElement sqrt_in_field(const FieldPtr& k, long j) {
  if (j < 1) raise(ErrorCode::InvalidArgument, "sqrt_in_field needs j >= 1");
  long square = 1, free = 1, n = j;
  for (long p = 2; p * p <= n; ++p) {
    while (n % (p * p) == 0) {
      n /= p * p;
      square *= p;
    }
  }
  free = n;
  if (free == 1) return FieldElement::rational(k, square);
  for (const auto& r : roots_in_field(k, IntPoly{-free, 0, 1})) {
    if (sign(r) > 0) return mpq_class(square) * r;
  }
  raise(ErrorCode::InvalidArgument, "sqrt " + std::to_string(j) + " is not in the field");
}

inline CFSpec seq_sqrt_j(long j, const FieldPtr& k, const CFSpec& base) {
  CFSpec s = detail::family(SeqKind::SqrtJ, j, base);
  s.field = k;
  s.element = sqrt_in_field(k, j);
  return s;
}

/// Roots of p sorted in decreasing order, after checking that all are real, distinct and > 1.
inline std::vector<DyadicInterval> roots_greater_than_one(const IntPoly& p) {
  if (p.degree() < 1 || !is_squarefree(p) || count_real_roots(p) != p.degree() ||
      sturm_count_above(p, Dyadic(1)) != p.degree()) {
    raise(ErrorCode::RootsNotRealDistinctGreaterOne, p.to_string() + ": roots are not real, distinct and > 1");
  }
  auto r = isolate_real_roots(p);
  std::reverse(r.begin(), r.end());
  return r;
}

/// Field Q(alpha_1) of the largest root of p, when it contains all the other roots.
inline FieldPtr root_field(const IntPoly& p) {
  auto roots = roots_greater_than_one(p);
  FieldPtr k = field_new(p, roots[0]);
  if (static_cast<long>(roots_in_field(k, p).size()) != p.degree()) {
    raise(ErrorCode::InvalidArgument, p.to_string() + ": Q(alpha_1) does not contain all roots (splitting field unsupported)");
  }
  return k;
}

/// alpha_j * base_n, alpha_1 > alpha_2 > ... the roots of p.
inline CFSpec seq_root_scaled(const IntPoly& p, long j, const CFSpec& base, const FieldPtr& k = nullptr) {
  auto roots = roots_greater_than_one(p);
  if (j < 1 || j > p.degree()) raise(ErrorCode::InvalidArgument, "root index out of range");
  if (!p.is_monic()) raise(ErrorCode::NotMonic, "root-scaled quotients need a monic polynomial (algebraic integer roots)");
  FieldPtr field = k ? k : root_field(p);
  std::optional<FieldElement> alpha;
  for (const auto& r : roots_in_field(field, p)) {
    DyadicInterval v = enclose(r, 64);
    if (sturm_count(p, hull(v, roots[static_cast<std::size_t>(j - 1)])) == 1 && v.intersects(roots[static_cast<std::size_t>(j - 1)])) {
      alpha = r;
    }
  }
  if (!alpha) raise(ErrorCode::InvalidArgument, "root " + std::to_string(j) + " not found in the field");
  CFSpec s = detail::family(SeqKind::RootScaled, j, base);
  s.field = field;
  s.element = alpha;
  s.poly = p;
  return s;
}

// Evaluation -----------------------------------------------------------------

namespace detail {

inline mpz_class base_integer(const CFSpec& s, long n) {
  if (!s.base) raise(ErrorCode::InvalidArgument, to_string(s.kind) + " needs a base sequence");
  const CFSpec& b = *s.base;
  Scalar v;
  switch (b.kind) {
    case SeqKind::DoublyExponential:
      return gen_doubly_exponential(b.d, n + b.offset);
    case SeqKind::Constant:
      v = b.value;
      break;
    case SeqKind::Explicit:
      if (n < 1 || n > static_cast<long>(b.values.size())) raise(ErrorCode::InvalidArgument, "explicit base exhausted");
      v = b.values[static_cast<std::size_t>(n - 1)];
      break;
    case SeqKind::SquarePlus:
      v = mpq_class(mpq_class(n * n) + b.value);
      break;
    default:
      raise(ErrorCode::InvalidArgument, "base sequence must be integer valued");
  }
  if (is_field(v) || std::get<mpq_class>(v).get_den() != 1) raise(ErrorCode::InvalidArgument, "base sequence must be integer valued");
  return std::get<mpq_class>(v).get_num();
}

inline Scalar in_field(const CFSpec& s, const mpq_class& q) {
  return s.field ? Scalar(FieldElement::rational(s.field, q)) : Scalar(q);
}

}  // namespace detail

/// Exact quotient a_n (n >= 1).
inline Scalar quotient(const CFSpec& s, long n) {
  if (n < 1) raise(ErrorCode::InvalidArgument, "quotient index must be >= 1");
  switch (s.kind) {
    case SeqKind::Constant:
      return s.value;
    case SeqKind::Explicit:
      if (n > static_cast<long>(s.values.size())) {
        raise(ErrorCode::InvalidArgument, "explicit sequence has only " + std::to_string(s.values.size()) + " terms");
      }
      return s.values[static_cast<std::size_t>(n - 1)];
    case SeqKind::SquarePlus:
      return mpq_class(mpq_class(n * n) + s.value);
    case SeqKind::OnePlusCOverSqrtN:
      raise(ErrorCode::InvalidArgument, "1 + c/sqrt(n) has no exact representation; use quotient_enclosure");
    case SeqKind::DoublyExponential:
      return mpq_class(gen_doubly_exponential(s.d, n + s.offset));
    case SeqKind::DivByJ: {
      mpq_class q(detail::base_integer(s, n), s.j);
      q.canonicalize();
      return q;
    }
    case SeqKind::Harmonic:
      return mpq_class(mpq_class(detail::base_integer(s, n)) * (s.j + harmonic(n)));
    case SeqKind::PrimePiPower: {
      mpq_class r(n + prime_pi(n), n), acc(detail::base_integer(s, n));
      r.canonicalize();
      for (long k = 0; k < s.j; ++k) acc *= r;
      return acc;
    }
    case SeqKind::DivisorSqrt2:
      return mpq_class(detail::base_integer(s, n) * divisor_count(n)) * *s.element;
    case SeqKind::DivisorPlusOneSqrt2:
      return mpq_class(detail::base_integer(s, n) * (1 + divisor_count(n))) * *s.element;
    case SeqKind::PhiPowers:
      return mpq_class(detail::base_integer(s, n)) * s.element->pow(static_cast<unsigned long>(s.j + 2 * (n - 1)));
    case SeqKind::SqrtJ:
    case SeqKind::RootScaled:
      return mpq_class(detail::base_integer(s, n)) * *s.element;
    case SeqKind::PrimeRatioSqrt2:
      return gen_prime_ratio(n) * *s.element;
    case SeqKind::PrimeScaledSqrt2: {
      mpq_class r(mpz_class(detail::base_integer(s, n) * nth_prime(n)), n);
      r.canonicalize();
      return r * *s.element;
    }
  }
  raise(ErrorCode::UnknownFamily, "unhandled sequence kind");
}

/// Enclosure of a_n under the identity embedding.
inline DyadicInterval quotient_enclosure(const CFSpec& s, long n, long prec = kDefaultPrecision) {
  if (s.kind == SeqKind::OnePlusCOverSqrtN) {
    if (n < 1) raise(ErrorCode::InvalidArgument, "quotient index must be >= 1");
    DyadicInterval r = iv_sqrt(DyadicInterval(n), prec + 8);
    return iv_add(DyadicInterval(1), iv_div(DyadicInterval::from_rational(s.value, prec + 8), r, prec + 8), prec);
  }
  return s_enclose(quotient(s, n), prec);
}

/// a_0 .. a_n with a_0 = 0.
inline std::vector<Scalar> cf_prefix(const CFSpec& s, long n) {
  std::vector<Scalar> a{detail::in_field(s, 0)};
  for (long k = 1; k <= n; ++k) a.push_back(quotient(s, k));
  return a;
}

/// Built-in decomposition rule, when the kind has one.
inline std::optional<Decomposition> decomposition(const CFSpec& s, long n) {
  auto one = [&] { return detail::in_field(s, 1); };
  auto zero = [&] { return detail::in_field(s, 0); };
  auto base = [&] { return detail::base_integer(s, n); };
  switch (s.kind) {
    case SeqKind::DoublyExponential:
      return Decomposition{gen_doubly_exponential(s.d, n + s.offset), one(), zero(), one()};
    case SeqKind::Constant:
    case SeqKind::Explicit:
    case SeqKind::SquarePlus: {
      Scalar v = quotient(s, n);
      if (is_field(v)) return std::nullopt;
      const mpq_class& q = std::get<mpq_class>(v);
      return Decomposition{q.get_num(), one(), zero(), mpq_class(q.get_den())};
    }
    case SeqKind::OnePlusCOverSqrtN:
      return std::nullopt;
    case SeqKind::DivByJ:
      return Decomposition{base(), one(), zero(), mpq_class(s.j)};
    case SeqKind::Harmonic: {
      mpq_class h = s.j + harmonic(n);
      return Decomposition{base() * h.get_num(), one(), zero(), mpq_class(h.get_den())};
    }
    case SeqKind::PrimePiPower: {
      mpz_class num = base(), den = 1;
      for (long k = 0; k < s.j; ++k) {
        num *= n + prime_pi(n);
        den *= n;
      }
      return Decomposition{num, one(), zero(), mpq_class(den)};
    }
    case SeqKind::DivisorSqrt2:
      return Decomposition{base() * divisor_count(n), *s.element, zero(), one()};
    case SeqKind::DivisorPlusOneSqrt2:
      return Decomposition{base() * (1 + divisor_count(n)), *s.element, zero(), one()};
    case SeqKind::PhiPowers:
      return Decomposition{base(), s.element->pow(static_cast<unsigned long>(s.j + 2 * (n - 1))), zero(), one()};
    case SeqKind::SqrtJ:
    case SeqKind::RootScaled:
      return Decomposition{base(), *s.element, zero(), one()};
    case SeqKind::PrimeRatioSqrt2:
      return Decomposition{mpz_class(n + nth_prime(n)), *s.element, zero(), detail::in_field(s, n)};
    case SeqKind::PrimeScaledSqrt2:
      return Decomposition{base() * nth_prime(n), *s.element, zero(), detail::in_field(s, n)};
  }
  return std::nullopt;
}

inline std::string describe(const CFSpec& s) {
  std::string name = to_string(s.kind);
  switch (s.kind) {
    case SeqKind::Constant:
      return "constant " + s.value.get_str();
    case SeqKind::Explicit:
      return "explicit (" + std::to_string(s.values.size()) + " terms)";
    case SeqKind::SquarePlus:
      return "n^2 + " + s.value.get_str();
    case SeqKind::OnePlusCOverSqrtN:
      return "1 + " + s.value.get_str() + "/sqrt(n)";
    case SeqKind::DoublyExponential:
      return s.offset == 0 ? "2^(n*" + std::to_string(s.d) + "^n)"
                           : "2^(m*" + std::to_string(s.d) + "^m), m = n+" + std::to_string(s.offset);
    default:
      break;
  }
  std::string b = s.base ? describe(*s.base) : "";
  switch (s.kind) {
    case SeqKind::DivByJ:
      return "a_n/" + std::to_string(s.j) + ", a_n = " + b;
    case SeqKind::RootScaled:
      return "alpha_" + std::to_string(s.j) + " a_n, alpha_j roots of " + s.poly.to_string() + ", a_n = " + b;
    case SeqKind::Harmonic:
      return "a_n (" + std::to_string(s.j) + " + H_n), a_n = " + b;
    case SeqKind::PrimePiPower:
      return "a_n (1 + pi(n)/n)^" + std::to_string(s.j) + ", a_n = " + b;
    case SeqKind::DivisorSqrt2:
      return "a_n d(n) sqrt2, a_n = " + b;
    case SeqKind::DivisorPlusOneSqrt2:
      return "a_n (1 + d(n)) sqrt2, a_n = " + b;
    case SeqKind::PhiPowers:
      return "phi^(" + std::to_string(s.j) + " + 2(n-1)) a_n, a_n = " + b;
    case SeqKind::SqrtJ:
      return "sqrt(" + std::to_string(s.j) + ") a_n, a_n = " + b;
    case SeqKind::PrimeRatioSqrt2:
      return "(1 + p_n/n) sqrt2";
    case SeqKind::PrimeScaledSqrt2:
      return "a_n (p_n/n) sqrt2, a_n = " + b;
    default:
      return name;
  }
}

/// Family dispatcher by name; params carry the base sequence and the field where needed.
struct FamilyParams {
  CFSpec base = seq_doubly_exponential(3);
  IntPoly poly;     // root-scaled
  FieldPtr field;   // root-scaled / sqrt-j override
};

inline CFSpec make_family(const std::string& name, const FamilyParams& params, long j) {
  if (name == "div-by-j") return seq_div_by_j(j, params.base);
  if (name == "root-scaled") return seq_root_scaled(params.poly, j, params.base, params.field);
  if (name == "harmonic") return seq_harmonic(j, params.base);
  if (name == "prime-pi-power") return seq_prime_pi_power(j, params.base);
  if (name == "divisor-sqrt2") return seq_divisor_sqrt2(params.base);
  if (name == "divisor-plus-one-sqrt2") return seq_divisor_plus_one_sqrt2(params.base);
  if (name == "phi-powers") return seq_phi_powers(j, params.base);
  if (name == "sqrt-j") return seq_sqrt_j(j, params.field ? params.field : multiquadratic_field(j), params.base);
  raise(ErrorCode::UnknownFamily, "unknown family '" + name + "'");
}

inline Scalar gen_corollary_family(const std::string& name, const FamilyParams& params, long j, long n) {
  return quotient(make_family(name, params, j), n);
}

inline FieldElement gen_hanluc(long j, long n, const CFSpec& base = seq_doubly_exponential(3)) {
  if (j == 1) return std::get<FieldElement>(quotient(seq_prime_ratio_sqrt2(), n));
  if (j == 2) return std::get<FieldElement>(quotient(seq_prime_scaled_sqrt2(base), n));
  raise(ErrorCode::InvalidArgument, "hanluc sequences are j = 1, 2");
}

struct RootScaledQuotient {
  FieldElement value;
  DyadicInterval enclosure;
  Decomposition decomposition;
};

inline RootScaledQuotient gen_from_polynomial_roots(const IntPoly& p, long j, long n, const CFSpec& base,
                                                    long prec = kDefaultPrecision) {
  CFSpec s = seq_root_scaled(p, j, base);
  FieldElement v = std::get<FieldElement>(quotient(s, n));
  return {v, enclose(v, prec), *decomposition(s, n)};
}

}  // namespace cfindep
