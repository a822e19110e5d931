#pragma once

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>
#include <utility>

#include "cfindep/error.hpp"

namespace cfindep {

/// Rounding direction for inexact dyadic operations.
enum class Round { Down, Up };

inline Round opposite(Round r) { return r == Round::Down ? Round::Up : Round::Down; }

inline long bit_length(const mpz_class& m) {
  if (m == 0) return 0;
  return static_cast<long>(mpz_sizeinbase(m.get_mpz_t(), 2));
}

/// Exact binary rational mantissa * 2^exponent, kept canonical (odd mantissa, zero has exponent 0).
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(long v) : mantissa_(v) { normalize(); }  // NOLINT(google-explicit-constructor)
  Dyadic(mpz_class mantissa, long exponent) : mantissa_(std::move(mantissa)), exponent_(exponent) {
    normalize();
  }

  static Dyadic from_double(double v) {
    if (!std::isfinite(v)) raise(ErrorCode::InvalidArgument, "non-finite double");
    int e = 0;
    double frac = std::frexp(v, &e);
    // 53-bit mantissa is exact after scaling by 2^53
    auto scaled = static_cast<long long>(std::ldexp(frac, 53));
    mpz_class m;
    mpz_set_si(m.get_mpz_t(), static_cast<long>(scaled));
    return Dyadic(m, static_cast<long>(e) - 53);
  }

  static Dyadic pow2(long k) { return Dyadic(mpz_class(1), k); }

  const mpz_class& mantissa() const { return mantissa_; }
  long exponent() const { return exponent_; }
  int sign() const { return sgn(mantissa_); }
  bool is_zero() const { return mantissa_ == 0; }
  long mantissa_bits() const { return bit_length(mantissa_); }

  /// floor(log2|x|) for nonzero x.
  long magnitude() const { return exponent_ + mantissa_bits() - 1; }

  Dyadic operator-() const { return Dyadic(-mantissa_, exponent_); }

  Dyadic ldexp(long k) const {
    if (is_zero()) return *this;
    return Dyadic(mantissa_, exponent_ + k);
  }

  mpq_class to_rational() const {
    mpq_class q(mantissa_);
    if (exponent_ >= 0) {
      mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(exponent_));
    } else {
      mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-exponent_));
    }
    return q;
  }

  double to_double() const {
    if (is_zero()) return 0.0;
    long e = 0;
    double d = mpz_get_d_2exp(&e, mantissa_.get_mpz_t());
    return std::ldexp(d, static_cast<int>(e + exponent_));
  }

  std::string to_string() const { return mantissa_.get_str() + "*2^" + std::to_string(exponent_); }

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    long e = std::min(a.exponent_, b.exponent_);
    mpz_class ma = a.mantissa_, mb = b.mantissa_;
    if (a.exponent_ > e) mpz_mul_2exp(ma.get_mpz_t(), ma.get_mpz_t(), static_cast<mp_bitcnt_t>(a.exponent_ - e));
    if (b.exponent_ > e) mpz_mul_2exp(mb.get_mpz_t(), mb.get_mpz_t(), static_cast<mp_bitcnt_t>(b.exponent_ - e));
    return Dyadic(ma + mb, e);
  }
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    return Dyadic(a.mantissa_ * b.mantissa_, a.exponent_ + b.exponent_);
  }

  friend int cmp(const Dyadic& a, const Dyadic& b) { return (a - b).sign(); }
  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exponent_ == b.exponent_ && a.mantissa_ == b.mantissa_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    int c = cmp(a, b);
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  void normalize() {
    if (mantissa_ == 0) {
      exponent_ = 0;
      return;
    }
    auto tz = mpz_scan1(mantissa_.get_mpz_t(), 0);
    if (tz > 0) {
      mpz_fdiv_q_2exp(mantissa_.get_mpz_t(), mantissa_.get_mpz_t(), tz);
      exponent_ += static_cast<long>(tz);
    }
  }

  mpz_class mantissa_{0};
  long exponent_ = 0;
};

inline int cmp(const Dyadic& a, const mpq_class& q) { return sgn(a.to_rational() - q); }

inline Dyadic abs(const Dyadic& x) { return x.sign() < 0 ? -x : x; }
inline const Dyadic& min(const Dyadic& a, const Dyadic& b) { return cmp(a, b) <= 0 ? a : b; }
inline const Dyadic& max(const Dyadic& a, const Dyadic& b) { return cmp(a, b) >= 0 ? a : b; }

/// Round to `prec` significant bits in direction `dir`.
inline Dyadic round(const Dyadic& x, long prec, Round dir) {
  long bits = x.mantissa_bits();
  if (bits <= prec) return x;
  auto shift = static_cast<mp_bitcnt_t>(bits - prec);
  mpz_class m;
  if (dir == Round::Down) {
    mpz_fdiv_q_2exp(m.get_mpz_t(), x.mantissa().get_mpz_t(), shift);
  } else {
    mpz_cdiv_q_2exp(m.get_mpz_t(), x.mantissa().get_mpz_t(), shift);
  }
  return Dyadic(m, x.exponent() + static_cast<long>(shift));
}

/// Directed quotient a/b with `prec` significant bits.
inline Dyadic div(const Dyadic& a, const Dyadic& b, long prec, Round dir) {
  if (b.is_zero()) raise(ErrorCode::DivisionByZero, "dyadic division by zero");
  if (a.is_zero()) return a;
  mpz_class num = a.mantissa(), den = b.mantissa();
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long k = std::max(0L, prec + 2 + bit_length(den) - bit_length(num));
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
  mpz_class q;
  if (dir == Round::Down) {
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  } else {
    mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  }
  return round(Dyadic(q, a.exponent() - b.exponent() - k), prec, dir);
}

inline Dyadic sqrt(const Dyadic& a, long prec, Round dir) {
  if (a.sign() < 0) raise(ErrorCode::NegativeSqrt, "square root of negative dyadic");
  if (a.is_zero()) return a;
  mpz_class m = a.mantissa();
  long e = a.exponent();
  long want = 2 * prec + 4;
  long s = std::max(0L, want - bit_length(m));
  if (((e - s) % 2) != 0) ++s;
  mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(s));
  e -= s;
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
  if (dir == Round::Up && r * r != m) r += 1;
  return round(Dyadic(r, e / 2), prec, dir);
}

inline Dyadic from_rational(const mpq_class& q, long prec, Round dir) {
  if (q == 0) return {};
  Dyadic num(q.get_num(), 0), den(q.get_den(), 0);
  if (q.get_den() == 1) return round(num, prec, dir);
  return div(num, den, prec, dir);
}

/// Exact dyadic midpoint.
inline Dyadic midpoint(const Dyadic& a, const Dyadic& b) { return (a + b).ldexp(-1); }

}  // namespace cfindep
